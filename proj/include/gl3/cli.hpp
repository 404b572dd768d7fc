#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gl3::cli {

class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Flat "key = value" configuration. Keys are fixed by the default file; lists are
// comma separated.
class Config {
public:
    // contents of config/defaults.conf, compiled in
    static Config defaults();
    static const std::string& default_text();

    void merge_text(const std::string& text, const std::string& origin);
    void merge_file(const std::string& path);
    void set(const std::string& key, const std::string& value);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    const std::string& raw(const std::string& key) const;
    std::int64_t get_int(const std::string& key) const;
    double get_double(const std::string& key) const;
    std::vector<std::int64_t> get_int_list(const std::string& key) const;
    std::vector<double> get_double_list(const std::string& key) const;
    const std::map<std::string, std::string>& entries() const { return values_; }

private:
    std::map<std::string, std::string> values_;
    bool open_ = true;  // new keys are accepted only while loading defaults
};

struct Verdict {
    std::string name;
    double value = 0;
    std::string relation;  // "<=", ">=" or "=="
    double bound = 0;
    bool pass = false;
};

class Report {
public:
    explicit Report(std::string suite) : suite_(std::move(suite)) {}

    void echo(const Config& cfg, const std::vector<std::string>& prefixes);
    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, double value);
    void add(const std::string& key, std::int64_t value);
    // records the verdict value relation bound
    bool check(const std::string& name, double value, const std::string& relation, double bound);
    void table(std::vector<std::string> header) { header_ = std::move(header); }
    void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }
    void fail(const std::string& error) { error_ = error; }

    bool passed() const;
    const std::string& suite() const { return suite_; }
    const std::vector<Verdict>& verdicts() const { return verdicts_; }
    // deterministic part of the report
    std::string body() const;
    std::string header(double seconds) const;
    std::string csv() const;
    bool has_table() const { return !header_.empty(); }

private:
    std::string suite_;
    std::vector<std::pair<std::string, std::string>> config_, results_;
    std::vector<Verdict> verdicts_;
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
    std::string error_;
};

std::string format_double(double x);

struct Suite {
    std::string name;
    std::string claim;  // the statement the suite checks
    std::vector<std::string> keys;  // config key prefixes echoed in the report
    std::function<void(const Config&, Report&)> run;
};

const std::vector<Suite>& suites();

enum ExitStatus { exit_pass = 0, exit_verdict = 1, exit_usage = 2, exit_resource = 3 };

int main(int argc, char** argv);

}  // namespace gl3::cli

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gl3/cli.hpp"
#include "gl3/errors.hpp"

namespace gl3::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

template <class T>
T parse_number(const std::string& key, const std::string& text) {
    T v{};
    const char* end = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end || text.empty())
        throw UsageError("config: key '" + key + "' expects a number, got '" + text + "'");
    return v;
}

}  // namespace

Config Config::defaults() {
    Config c;
    c.merge_text(default_text(), "defaults");
    c.open_ = false;
    return c;
}

void Config::merge_text(const std::string& text, const std::string& origin) {
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void Config::merge_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("config: cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    merge_text(ss.str(), path);
}

void Config::set(const std::string& key, const std::string& value) {
    if (key.empty()) throw UsageError("config: empty key");
    if (!open_ && !values_.count(key)) throw UsageError("config: unknown key '" + key + "'");
    values_[key] = value;
}

const std::string& Config::raw(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw UsageError("config: missing key '" + key + "'");
    return it->second;
}

std::int64_t Config::get_int(const std::string& key) const {
    return parse_number<std::int64_t>(key, raw(key));
}

double Config::get_double(const std::string& key) const {
    return parse_number<double>(key, raw(key));
}

std::vector<std::int64_t> Config::get_int_list(const std::string& key) const {
    std::vector<std::int64_t> out;
    for (const auto& s : split_list(raw(key))) out.push_back(parse_number<std::int64_t>(key, s));
    if (out.empty()) throw UsageError("config: key '" + key + "' expects a non-empty list");
    return out;
}

std::vector<double> Config::get_double_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& s : split_list(raw(key))) out.push_back(parse_number<double>(key, s));
    if (out.empty()) throw UsageError("config: key '" + key + "' expects a non-empty list");
    return out;
}

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) return "nan";
    return std::string(buf, ptr);
}

void Report::echo(const Config& cfg, const std::vector<std::string>& prefixes) {
    for (const auto& [k, v] : cfg.entries())
        for (const auto& p : prefixes)
            if (k == p || k.rfind(p + ".", 0) == 0) {
                config_.emplace_back(k, v);
                break;
            }
}

void Report::add(const std::string& key, const std::string& value) { results_.emplace_back(key, value); }
void Report::add(const std::string& key, double value) { add(key, format_double(value)); }
void Report::add(const std::string& key, std::int64_t value) { add(key, std::to_string(value)); }

bool Report::check(const std::string& name, double value, const std::string& relation, double bound) {
    bool pass = false;
    if (relation == "<=")
        pass = value <= bound;
    else if (relation == ">=")
        pass = value >= bound;
    else if (relation == "==")
        pass = value == bound;
    else
        throw std::invalid_argument("Report::check: unknown relation " + relation);
    verdicts_.push_back({name, value, relation, bound, pass});
    return pass;
}

bool Report::passed() const {
    if (!error_.empty() || verdicts_.empty()) return false;
    for (const auto& v : verdicts_)
        if (!v.pass) return false;
    return true;
}

std::string Report::body() const {
    std::ostringstream os;
    os << "suite = " << suite_ << "\n";
    for (const auto& [k, v] : config_) os << "config." << k << " = " << v << "\n";
    for (const auto& [k, v] : results_) os << "result." << k << " = " << v << "\n";
    for (const auto& v : verdicts_)
        os << "verdict." << v.name << " = " << (v.pass ? "pass" : "fail") << " value=" << format_double(v.value)
           << " relation=" << v.relation << " bound=" << format_double(v.bound) << "\n";
    if (!error_.empty()) os << "error = " << error_ << "\n";
    os << "status = " << (passed() ? "pass" : "fail") << "\n";
    return os.str();
}

std::string Report::header(double seconds) const {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &tm);
    std::ostringstream os;
    os << "# timestamp = " << stamp << "\n# wall_time_seconds = " << format_double(std::round(seconds * 1000) / 1000)
       << "\n";
    return os.str();
}

std::string Report::csv() const {
    std::ostringstream os;
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
        os << "\n";
    };
    line(header_);
    for (const auto& r : rows_) line(r);
    return os.str();
}

int main(int argc, char** argv) {
    CLI::App app{"Numerical verification suites for GL(3) x Dirichlet twists"};
    std::string suite, config_path, out_dir;
    std::vector<std::string> sets;
    double tol = 0;
    std::int64_t seed = 0, threads = 0;
    bool list = false;
    app.add_option("suite", suite, "suite to run");
    app.add_option("--config", config_path, "key-value file overriding the defaults");
    app.add_option("--out", out_dir, "directory for the report and CSV files");
    auto* tol_opt = app.add_option("--tol", tol, "override 'tolerance'");
    auto* seed_opt = app.add_option("--seed", seed, "override 'seed'");
    auto* threads_opt = app.add_option("--threads", threads, "override 'threads'");
    app.add_option("--set", sets, "override KEY=VALUE (repeatable)");
    app.add_flag("--list", list, "list the suites");
    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    if (list) {
        for (const auto& s : suites()) std::cout << s.name << "\t" << s.claim << "\n";
        return exit_pass;
    }

    const Suite* chosen = nullptr;
    for (const auto& s : suites())
        if (s.name == suite) chosen = &s;
    if (!chosen) {
        std::cerr << (suite.empty() ? "no suite given" : "unknown suite '" + suite + "'")
                  << "; run with --list to see the suites\n";
        return exit_usage;
    }

    Config cfg = Config::defaults();
    try {
        if (!config_path.empty()) cfg.merge_file(config_path);
        for (const auto& kv : sets) {
            const auto eq = kv.find('=');
            if (eq == std::string::npos) throw UsageError("--set expects KEY=VALUE, got '" + kv + "'");
            cfg.set(trim(kv.substr(0, eq)), trim(kv.substr(eq + 1)));
        }
        if (*tol_opt) cfg.set("tolerance", format_double(tol));
        if (*seed_opt) cfg.set("seed", std::to_string(seed));
        if (*threads_opt) cfg.set("threads", std::to_string(threads));
        if (cfg.get_int("threads") < 1) throw UsageError("threads must be at least 1");
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    }

    Report report(chosen->name);
    report.echo(cfg, chosen->keys);
    int status = exit_pass;
    const auto start = std::chrono::steady_clock::now();
    try {
        chosen->run(cfg, report);
        status = report.passed() ? exit_pass : exit_verdict;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const DomainError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const PreconditionError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        report.fail(e.what());
        status = exit_resource;
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string text = report.header(seconds) + report.body();
    std::cout << text;
    if (!out_dir.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(out_dir, ec);
        std::ofstream rep(std::filesystem::path(out_dir) / (chosen->name + ".txt"));
        rep << text;
        if (report.has_table()) {
            std::ofstream csv(std::filesystem::path(out_dir) / (chosen->name + ".csv"));
            csv << report.csv();
        }
        if (!rep) {
            std::cerr << "cannot write report to " << out_dir << "\n";
            return exit_resource;
        }
    }
    return status;
}

}  // namespace gl3::cli

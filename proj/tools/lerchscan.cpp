#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "lerch/scanner.hpp"
#include "lerch/sequences.hpp"

using namespace lerch;

namespace {

struct Range {
    u64 lo = 0;
    u64 hi = 0;
};

Range parse_range(const std::string& text) {
    size_t dots = text.find("..");
    if (dots == std::string::npos || dots == 0 || dots + 2 >= text.size())
        throw CLI::ValidationError("--range", "want lo..hi, got '" + text + "'");
    Range r;
    r.lo = std::stoull(text.substr(0, dots));
    r.hi = std::stoull(text.substr(dots + 2));
    if (r.lo > r.hi) throw CLI::ValidationError("--range", "lo > hi in '" + text + "'");
    return r;
}

int default_threads() {
    if (const char* env = std::getenv("LERCHSCAN_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    return 0;  // library picks OpenMP default
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
    if (path.empty()) return std::cout;
    file.open(path, std::ios::trunc);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

int cmd_eval(u32 p, const std::vector<u32>& ns, const std::vector<u64>& bases,
             bool families, const std::string& format, std::ostream& os) {
    PrimeContext ctx(p);
    SumCache cache(ctx);
    if (format == "json") {
        nlohmann::json j;
        j["p"] = p;
        for (u64 b : bases) j["q"][std::to_string(b)] = cache.q(b);
        for (u32 n : ns) {
            if (n % p == 0) continue;
            j["s"][std::to_string(n)] = cache.table(n).values;
            if (families) {
                nlohmann::json fam;
                for (u32 k = 0; k < n; ++k) {
                    fam["s_prime"].push_back(cache.s_prime(n, k));
                    fam["s_dprime"].push_back(cache.s_dprime(n, k));
                    fam["s_star"].push_back(cache.s_star(n, k));
                }
                j["families"][std::to_string(n)] = std::move(fam);
            }
        }
        os << j.dump(1, '\t') << "\n";
        return 0;
    }
    os << "p = " << p << "\n";
    for (u64 b : bases) os << "q_" << p << "(" << b << ") = " << cache.q(b) << "\n";
    for (u32 n : ns) {
        if (n % p == 0) {
            os << "s(.," << n << "): skipped, p | N\n";
            continue;
        }
        os << "s(k," << n << ") = [";
        const auto& t = cache.table(n);
        for (u32 k = 0; k < n; ++k) os << (k ? "," : "") << t.values[k];
        os << "]\n";
        if (families) {
            os << "s'(k," << n << ") = [";
            for (u32 k = 0; k < n; ++k) os << (k ? "," : "") << cache.s_prime(n, k);
            os << "]\ns''(k," << n << ") = [";
            for (u32 k = 0; k < n; ++k) os << (k ? "," : "") << cache.s_dprime(n, k);
            os << "]\ns*(k," << n << ") = [";
            for (u32 k = 0; k < n; ++k) os << (k ? "," : "") << cache.s_star(n, k);
            os << "]\n";
        }
    }
    return 0;
}

int cmd_verify(Range range, const std::vector<std::string>& checks, int n_small,
               int n_large, int threads, const std::string& format, std::ostream& os) {
    auto summary = verify_range(range.lo, range.hi, checks, n_small, n_large, threads);
    if (format == "json") {
        nlohmann::json j;
        j["primes"] = summary.primes;
        for (const auto& t : summary.tallies)
            j["checks"][t.id] = {{"pass", t.pass},
                                 {"fail", t.fail},
                                 {"vacuous", t.vacuous},
                                 {"fired", t.fired}};
        for (const auto& f : summary.failures) {
            nlohmann::json fj = {{"p", f.p}, {"id", f.id}, {"residuals", f.residuals}};
            if (!f.params.label().empty()) fj["params"] = f.params.label();
            j["failures"].push_back(std::move(fj));
        }
        j["ok"] = summary.ok();
        os << j.dump(1, '\t') << "\n";
    } else {
        os << "primes checked: " << summary.primes << "\n";
        for (const auto& t : summary.tallies) {
            os << t.id << ": pass=" << t.pass << " fail=" << t.fail
               << " vacuous=" << t.vacuous;
            if (t.fired) os << " fired=" << t.fired;
            os << "\n";
        }
        for (const auto& f : summary.failures) {
            os << "FAIL p=" << f.p << " " << f.id;
            if (!f.params.label().empty()) os << "[" << f.params.label() << "]";
            os << " residuals=[";
            for (size_t i = 0; i < f.residuals.size(); ++i)
                os << (i ? "," : "") << f.residuals[i];
            os << "]\n";
        }
        os << (summary.ok() ? "OK" : "FAILED") << "\n";
    }
    return summary.ok() ? 0 : 1;
}

int cmd_scan(Range range, const std::vector<std::string>& target_texts,
             const ScanOptions& opt, const std::string& format, std::ostream& os) {
    std::vector<ScanTarget> targets;
    for (const auto& t : target_texts) targets.push_back(ScanTarget::parse(t));
    auto res = scan(range.lo, range.hi, targets, opt);
    if (format == "json")
        write_hits_jsonl(os, res.hits);
    else if (format == "text")
        for (const auto& h : res.hits)
            os << h.target << " hit at p=" << h.p << " (q2=" << h.q2 << ", q3=" << h.q3
               << ")\n";
    else
        write_hits_csv(os, res.hits);
    if (!res.complete) {
        std::cerr << "scan stopped early at " << res.next_lo << " (checkpoint hook)\n";
        return 1;
    }
    return 0;
}

int cmd_report(Range range, std::vector<u32> ns, int threads, const std::string& format,
               std::ostream& os) {
    if (ns.empty())
        for (u32 n = 2; n <= 46; ++n) ns.push_back(n);
    std::vector<ScanTarget> targets;
    for (u32 n : ns)
        for (u32 k = 0; k < n; ++k) {
            ScanTarget t;
            t.kind = ScanTarget::Kind::Sum;
            t.n = n;
            t.k = k;
            targets.push_back(t);
        }
    ScanOptions opt;
    opt.threads = threads;
    auto res = scan(range.lo, range.hi, targets, opt);
    if (format == "json")
        write_hits_jsonl(os, res.hits);
    else if (format == "text")
        for (const auto& h : res.hits) os << h.target << " = 0 at p=" << h.p << "\n";
    else
        write_hits_csv(os, res.hits);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"lerchscan: congruence checks and zero scans for the sums s(k,N) mod p"};
    app.require_subcommand(1);

    std::string range_text, format = "csv", output, checkpoint, checks_text, n_text;
    std::vector<std::string> target_texts;
    int threads = default_threads();
    u64 p_flag = 0;
    std::vector<u64> bases;
    bool families = false, resume = false;
    int n_small = 24, n_large = 48;

    auto* eval = app.add_subcommand("eval", "print q_p(b) and sum tables at one prime");
    eval->add_option("--p", p_flag, "prime p")->required();
    eval->add_option("--N", n_text, "comma-separated list of N");
    eval->add_option("--bases", bases, "Fermat quotient bases")->delimiter(',');
    eval->add_flag("--families", families, "also print s', s'', s*");
    eval->add_option("--format", format, "csv|json|text")->check(CLI::IsMember({"csv", "json", "text"}));
    eval->add_option("--output", output, "write to file instead of stdout");

    auto* verify = app.add_subcommand("verify", "run the identity catalog over a prime range");
    verify->add_option("--range", range_text, "prime range lo..hi")->required();
    verify->add_option("--checks", checks_text, "comma-separated check ids (default: all)");
    verify->add_option("--n-small", n_small, "cap on N for most families");
    verify->add_option("--n-large", n_large, "cap on N for the theorem families");
    verify->add_option("--threads", threads, "worker threads");
    verify->add_option("--format", format, "csv|json|text")->check(CLI::IsMember({"csv", "json", "text"}));
    verify->add_option("--output", output, "write to file instead of stdout");

    auto* scan_cmd = app.add_subcommand("scan", "scan a prime range for target zeros");
    scan_cmd->add_option("--range", range_text, "prime range lo..hi")->required();
    scan_cmd->add_option("--target", target_texts, "s:<N>:<k>, q<base>, or a check id")
        ->required();
    scan_cmd->add_option("--threads", threads, "worker threads");
    scan_cmd->add_option("--checkpoint", checkpoint, "checkpoint file path");
    scan_cmd->add_flag("--resume", resume, "resume from the checkpoint file");
    scan_cmd->add_option("--format", format, "csv|json|text")->check(CLI::IsMember({"csv", "json", "text"}));
    scan_cmd->add_option("--output", output, "write to file instead of stdout");

    auto* report = app.add_subcommand("report", "zero census of s(k,N) over a prime range");
    report->add_option("--range", range_text, "prime range lo..hi")->required();
    report->add_option("--N", n_text, "comma-separated list of N (default 2..46)");
    report->add_option("--threads", threads, "worker threads");
    report->add_option("--format", format, "csv|json|text")->check(CLI::IsMember({"csv", "json", "text"}));
    report->add_option("--output", output, "write to file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;  // usage errors are exit 2; --help is 0
    }

    try {
        std::vector<u32> ns;
        for (const auto& s : split_list(n_text)) ns.push_back(static_cast<u32>(std::stoul(s)));
        std::ofstream file;
        std::ostream& os = open_output(file, output);

        if (eval->parsed()) {
            if (!is_prime(p_flag) || p_flag < 5)
                throw std::runtime_error("--p must be a prime >= 5");
            if (ns.empty() && bases.empty()) bases = {2, 3};
            return cmd_eval(static_cast<u32>(p_flag), ns, bases, families, format, os);
        }
        Range range = parse_range(range_text);
        if (verify->parsed())
            return cmd_verify(range, split_list(checks_text), n_small, n_large, threads,
                              format, os);
        if (scan_cmd->parsed()) {
            ScanOptions opt;
            opt.threads = threads;
            opt.checkpoint_path = checkpoint;
            opt.resume = resume;
            if (resume && checkpoint.empty())
                throw CLI::ValidationError("--resume", "requires --checkpoint");
            return cmd_scan(range, target_texts, opt, format, os);
        }
        return cmd_report(range, ns, threads, format, os);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

#include "relaylab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <istream>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <thread>

#include <json.hpp>

#include "relaylab/asymptotic.hpp"
#include "relaylab/bounds.hpp"
#include "relaylab/energy.hpp"
#include "relaylab/errors.hpp"

namespace relaylab::sweep {
namespace {

const std::map<std::string, std::vector<std::string>>& known_schemes() {
    static const std::map<std::string, std::vector<std::string>> k = {
        {"sym2", {"cutset", "df", "baf", "bspdf", "bspdf_r1", "bspdf_r2", "tspdf", "ts_df_baf", "ts_bspdf"}},
        {"symN", {"cutset", "df", "baf", "bspdf"}},
        {"asym2", {"cutset", "df", "baf", "bafdf", "bspdf11", "bspdf12"}},
        {"energy", {"df", "baf", "bspdf"}},
    };
    return k;
}

// Splits "bspdf_n4" into ("bspdf", 4); labels without a suffix keep `fallback`.
std::pair<std::string, int> split_relays(const std::string& label, int fallback) {
    const auto pos = label.rfind("_n");
    if (pos == std::string::npos || pos + 2 >= label.size()) return {label, fallback};
    const std::string digits = label.substr(pos + 2);
    if (!std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        return {label, fallback};
    }
    return {label.substr(0, pos), std::stoi(digits)};
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string params_json(const ParamList& params) {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : params) j[k] = v;
    return j.dump();
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

class Evaluator {
public:
    explicit Evaluator(const SweepJob& job) : job_(job) {
        const auto uses = [&](const char* s) {
            return std::find(job.schemes.begin(), job.schemes.end(), s) != job.schemes.end();
        };
        if (job.family == "sym2" && uses("ts_df_baf")) {
            ts_df_baf_ = std::make_unique<asym::TimeshareEnvelope>([](double x) { return asym::adf(x, 2); },
                                                                   [](double x) { return asym::abaf(x, 2).y; });
        }
        if (job.family == "sym2" && uses("ts_bspdf")) {
            const auto c = [](double x) { return asym::abspdf_sym2(x).y; };
            ts_bspdf_ = std::make_unique<asym::TimeshareEnvelope>(c, c);
        }
    }

    asym::CurveValue operator()(const std::string& label, double x) const {
        const asym::AsymptoticOptions multi{64, job_.seed, 3000};
        const std::string& fam = job_.family;
        if (fam == "sym2") {
            if (label == "cutset") return plain(acutset_sym(x, 2));
            if (label == "df") return plain(asym::adf(x, 2));
            if (label == "baf") return asym::abaf(x, 2);
            if (label == "bspdf") return asym::abspdf_sym2(x);
            if (label == "bspdf_r1" || label == "bspdf_r2") {
                asym::CurveValue c = asym::abspdf_sym2(x);
                for (const auto& [k, v] : c.params) {
                    if (k == label.substr(6)) c.y = v;
                }
                return c;
            }
            if (label == "tspdf") return asym::atspdf_sym2(x, {asym::kTspdfStarts, job_.seed, 3000});
            if (label == "ts_df_baf") return (*ts_df_baf_)(x);
            if (label == "ts_bspdf") return (*ts_bspdf_)(x);
        } else if (fam == "symN") {
            const auto [base, n] = split_relays(label, job_.n_relays);
            if (base == "cutset") return plain(acutset_sym(x, n));
            if (base == "df") return plain(asym::adf(x, n));
            if (base == "baf") return asym::abaf(x, n);
            if (base == "bspdf") return asym::abspdf_symN(x, n);
        } else if (fam == "asym2") {
            if (label == "cutset") return plain(acutset_asym(x));
            if (label == "df") return plain(asym::adf_asym(x));
            if (label == "baf") return asym::abaf_asym(x, multi);
            if (label == "bafdf") return asym::abafdf(x, multi);
            if (label == "bspdf11") return asym::abspdf_asym11(x, multi);
            if (label == "bspdf12") return asym::abspdf_asym12(x, multi);
        } else if (fam == "energy") {
            return energy::ebit_ratio_curve(label, {x}).front();
        }
        throw DomainError("unknown scheme '" + label + "' for family " + fam);
    }

private:
    static asym::CurveValue plain(double y) { return {y, {}, false}; }

    const SweepJob& job_;
    std::unique_ptr<asym::TimeshareEnvelope> ts_df_baf_;
    std::unique_ptr<asym::TimeshareEnvelope> ts_bspdf_;
};

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                cur += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(std::move(cur));
    return out;
}

}  // namespace

void SweepJob::validate() const {
    const auto& k = known_schemes();
    const auto it = k.find(family);
    if (it == k.end()) throw DomainError("unknown family '" + family + "'");
    if (schemes.empty()) throw DomainError("sweep needs at least one scheme");
    for (const std::string& s : schemes) {
        const std::string base = family == "symN" ? split_relays(s, n_relays).first : s;
        if (std::find(it->second.begin(), it->second.end(), base) == it->second.end()) {
            throw DomainError("unknown scheme '" + s + "' for family " + family);
        }
        if (family == "symN" && split_relays(s, n_relays).second < 2) throw DomainError("symN needs N >= 2");
    }
    if (!(x_min > 0.0) || !(x_min < x_max) || !std::isfinite(x_max)) {
        throw DomainError("sweep needs 0 < x_min < x_max");
    }
    if (points < 2) throw DomainError("sweep needs at least 2 points");
    if (n_relays < 2) throw DomainError("n_relays must be >= 2");
}

std::vector<double> grid(const SweepJob& job) {
    job.validate();
    std::vector<double> xs(job.points);
    for (int i = 0; i < job.points; ++i) {
        const double t = static_cast<double>(i) / (job.points - 1);
        xs[i] = job.log_spaced ? std::exp(std::log(job.x_min) + t * (std::log(job.x_max) - std::log(job.x_min)))
                               : job.x_min + t * (job.x_max - job.x_min);
    }
    xs.front() = job.x_min;
    xs.back() = job.x_max;
    return xs;
}

std::vector<CsvRow> run(const SweepJob& job, int threads) {
    const std::vector<double> xs = grid(job);
    const Evaluator eval(job);

    const std::size_t ns = job.schemes.size();
    const std::size_t total = xs.size() * ns;
    std::vector<std::optional<CsvRow>> rows(total);
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const auto worker = [&] {
        for (std::size_t k = next++; k < total; k = next++) {
            try {
                const double x = xs[k / ns];
                const std::string& label = job.schemes[k % ns];
                const asym::CurveValue c = eval(label, x);
                if (!std::isfinite(c.y)) throw ConvergenceError("non-finite curve value for " + label, c.y, 0.0);
                rows[k] = CsvRow{x, label, c.y, params_json(c.params), c.on_boundary};
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next = total;
            }
        }
    };
    const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(total)));
    std::vector<std::thread> pool;
    for (int t = 1; t < n_threads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    std::vector<CsvRow> out;
    out.reserve(total);
    for (auto& r : rows) out.push_back(std::move(*r));
    std::stable_sort(out.begin(), out.end(), [](const CsvRow& a, const CsvRow& b) {
        if (a.x != b.x) return a.x < b.x;
        return a.scheme < b.scheme;
    });
    return out;
}

SweepJob figure_job(const std::string& figure, std::uint64_t seed) {
    SweepJob job;
    job.seed = seed;
    if (figure == "fig3") {
        job.schemes = {"cutset", "df", "baf", "bspdf", "ts_df_baf", "ts_bspdf"};
    } else if (figure == "fig4") {
        job.schemes = {"bspdf", "bspdf_r1", "bspdf_r2"};
    } else if (figure == "fig5") {
        job.schemes = {"cutset", "df", "baf", "bspdf", "tspdf", "ts_bspdf"};
    } else if (figure == "fig6") {
        job.family = "symN";
        for (int n : {2, 4, 8}) {
            for (const char* s : {"cutset", "baf", "bspdf"}) job.schemes.push_back(std::string(s) + "_n" + std::to_string(n));
        }
    } else if (figure == "fig7") {
        job.family = "asym2";
        job.schemes = {"cutset", "df", "baf", "bafdf", "bspdf11", "bspdf12"};
    } else if (figure == "fig8") {
        job.family = "energy";
        job.schemes = {"baf", "df", "bspdf"};
    } else {
        throw DomainError("unknown figure '" + figure + "' (expected fig3 ... fig8)");
    }
    return job;
}

void write_csv(std::ostream& os, const std::vector<CsvRow>& rows) {
    os << "x,scheme,y,params_json,boundary_flag\n";
    for (const CsvRow& r : rows) {
        os << format_double(r.x) << ',' << r.scheme << ',' << format_double(r.y) << ',' << quote(r.params_json)
           << ',' << (r.boundary ? 1 : 0) << '\n';
    }
}

std::vector<CsvRow> read_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw DomainError("empty CSV");
    if (line != "x,scheme,y,params_json,boundary_flag") throw DomainError("unexpected CSV header: " + line);
    std::vector<CsvRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> f = split_fields(line);
        if (f.size() != 5) throw DomainError("malformed CSV row: " + line);
        rows.push_back({std::stod(f[0]), f[1], std::stod(f[2]), f[3], f[4] == "1"});
    }
    return rows;
}

std::vector<Violation> verify(const std::vector<CsvRow>& rows, double rel_tol) {
    // (x, suffix) -> cut-set value
    std::map<std::pair<double, std::string>, double> bounds;
    const auto suffix_of = [](const std::string& label) {
        const auto [base, n] = split_relays(label, 0);
        return std::pair{base, n == 0 ? std::string() : std::to_string(n)};
    };
    for (const CsvRow& r : rows) {
        const auto [base, suffix] = suffix_of(r.scheme);
        if (base == "cutset") bounds[{r.x, suffix}] = r.y;
    }
    std::vector<Violation> out;
    for (const CsvRow& r : rows) {
        const auto [base, suffix] = suffix_of(r.scheme);
        if (base == "cutset") continue;
        const auto it = bounds.find({r.x, suffix});
        if (it == bounds.end()) continue;
        if (r.y > it->second + rel_tol * std::max(1.0, std::abs(it->second))) {
            out.push_back({r.x, r.scheme, r.y, it->second});
        }
    }
    return out;
}

int default_threads() {
    if (const char* env = std::getenv("RELAYLAB_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min<long>(v, 1024));
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace relaylab::sweep

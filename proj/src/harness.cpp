#include "emo/harness.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <map>
#include <mutex>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

namespace emo {

namespace {

std::string trim(std::string_view s)
{
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string_view::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r\n");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        out.emplace_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
        if (pos == std::string_view::npos) {
            return out;
        }
        start = pos + 1;
    }
}

template <class T>
std::optional<T> parse_number(std::string_view s)
{
    T v{};
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || s.empty()) {
        return std::nullopt;
    }
    return v;
}

std::string format_double(double v)
{
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

std::optional<bool> parse_bool(std::string_view s)
{
    if (s == "1" || s == "true" || s == "on" || s == "yes") {
        return true;
    }
    if (s == "0" || s == "false" || s == "off" || s == "no") {
        return false;
    }
    return std::nullopt;
}

std::string problem_label(const ProblemSpec& p)
{
    if (p.kind != "urrrmo-sigma-z") {
        return p.kind;
    }
    return p.kind + "(sigma=" + p.sigma + ";z=" + p.z + ")";
}

bool is_known_algo(const std::string& algo)
{
    return algo == "gsemo" || algo == "nsgaii" || algo == "blackbox:nsgaii" || algo == "blackbox:mutation";
}

bool uses_mu(const std::string& algo)
{
    return algo != "gsemo";
}

} // namespace

ConfigError::ConfigError(std::vector<std::string> violations)
    : std::invalid_argument([&] {
        std::string msg = "invalid configuration:";
        for (const auto& v : violations) {
            msg += "\n  - " + v;
        }
        return msg;
    }())
    , violations_(std::move(violations))
{
}

// ---------------------------------------------------------------------------

BudgetSpec BudgetSpec::parse(std::string_view text)
{
    const std::string s = trim(text);
    BudgetSpec b;
    std::string coeff = s;
    b.exponent = 0;
    const auto npos = s.find('n');
    if (npos != std::string::npos) {
        std::string power = s.substr(npos + 1);
        coeff = s.substr(0, npos);
        if (!coeff.empty()) {
            if (coeff.back() != '*') {
                throw std::invalid_argument("budget '" + s + "': expected <c>*n^<k>");
            }
            coeff.pop_back();
        }
        if (power.empty()) {
            b.exponent = 1;
        } else if (power.front() == '^') {
            const auto k = parse_number<unsigned>(std::string_view(power).substr(1));
            if (!k || *k > 12) {
                throw std::invalid_argument("budget '" + s + "': bad exponent");
            }
            b.exponent = *k;
        } else {
            throw std::invalid_argument("budget '" + s + "': expected <c>*n^<k>");
        }
        if (coeff.empty()) {
            coeff = "1";
        }
    }
    const auto c = parse_number<double>(coeff);
    if (!c || !(*c >= 1.0) || *c > 1e18 || std::floor(*c) != *c) {
        throw std::invalid_argument("budget '" + s + "': coefficient must be a positive integer");
    }
    b.factor = *c;
    return b;
}

std::uint64_t BudgetSpec::for_length(std::size_t n) const
{
    long double v = factor;
    for (unsigned i = 0; i < exponent; ++i) {
        v *= static_cast<long double>(n);
    }
    if (v > 1e19L) {
        throw std::overflow_error("budget overflows 64 bits at n=" + std::to_string(n));
    }
    return static_cast<std::uint64_t>(v);
}

std::string BudgetSpec::to_string() const
{
    std::string c = format_double(factor);
    if (exponent == 0) {
        return c;
    }
    return c + "*n^" + std::to_string(exponent);
}

// ---------------------------------------------------------------------------

void ExperimentConfig::validate() const
{
    std::vector<std::string> v;
    std::size_t divisor = 0;
    try {
        divisor = problem.length_divisor();
    } catch (const std::exception& e) {
        v.emplace_back(e.what());
    }
    if (!is_known_algo(algo)) {
        v.push_back("unknown algo '" + algo + "' (expected gsemo, nsgaii, blackbox:nsgaii or blackbox:mutation)");
    }
    if (!(pc >= 0.0 && pc <= 1.0)) {
        v.push_back("pc must lie in [0,1], got " + format_double(pc));
    }
    CrossoverKind cross = CrossoverKind::None;
    try {
        cross = parse_crossover(crossover);
    } catch (const std::exception& e) {
        v.emplace_back(e.what());
    }
    if (cross == CrossoverKind::None && pc > 0.0) {
        v.push_back("pc > 0 needs a crossover operator");
    }
    if (ns.empty()) {
        v.emplace_back("n list is empty");
    }
    if (trials == 0) {
        v.emplace_back("trials must be positive");
    }
    if (uses_mu(algo)) {
        if (algo != "blackbox:mutation" && (mu < 2 || mu % 2 != 0)) {
            v.push_back("mu must be even and >= 2 for " + algo + ", got " + std::to_string(mu));
        }
        if (algo == "blackbox:mutation" && mu == 0) {
            v.emplace_back("mu must be positive");
        }
    }
    for (const auto n : ns) {
        const std::string at = " (n=" + std::to_string(n) + ")";
        if (n == 0 || (divisor != 0 && n % divisor != 0)) {
            v.push_back(problem.kind + " needs n divisible by " + std::to_string(divisor) + at);
            continue;
        }
        try {
            (void)MutationOperator::parse(mutation, n);
        } catch (const std::exception& e) {
            v.push_back(std::string(e.what()) + at);
        }
        if (divisor != 0) {
            try {
                (void)problem.make(n, seed);
            } catch (const std::exception& e) {
                v.push_back(std::string(e.what()) + at);
            }
        }
        try {
            const auto b = budget.for_length(n);
            if (b == 0) {
                v.push_back("budget is zero" + at);
            }
            if (uses_mu(algo) && b < mu) {
                v.push_back("budget " + std::to_string(b) + " is below mu" + at);
            }
        } catch (const std::exception& e) {
            v.push_back(std::string(e.what()));
        }
    }
    if (!v.empty()) {
        throw ConfigError(std::move(v));
    }
}

void ExperimentConfig::set(std::string_view key_in, std::string_view value_in)
{
    const std::string key = trim(key_in);
    const std::string value = trim(value_in);
    auto bad = [&](const std::string& why) { return ConfigError({key + "=" + value + ": " + why}); };
    auto unsigned_value = [&]() -> std::uint64_t {
        if (auto u = parse_number<std::uint64_t>(value)) {
            return *u;
        }
        throw bad("expected a non-negative integer");
    };

    if (key == "problem") {
        problem.kind = value;
    } else if (key == "sigma") {
        problem.sigma = value;
    } else if (key == "z") {
        problem.z = value;
    } else if (key == "algo") {
        algo = value;
    } else if (key == "mutation") {
        mutation = value;
    } else if (key == "crossover") {
        crossover = value;
    } else if (key == "pc") {
        auto d = parse_number<double>(value);
        if (!d) {
            throw bad("expected a number");
        }
        pc = *d;
    } else if (key == "mu") {
        mu = unsigned_value();
    } else if (key == "lambda") {
        lambda = unsigned_value();
    } else if (key == "n") {
        ns.clear();
        for (const auto& part : split(value, ',')) {
            auto u = parse_number<std::size_t>(trim(part));
            if (!u) {
                throw bad("expected a comma-separated list of lengths");
            }
            ns.push_back(*u);
        }
    } else if (key == "budget") {
        try {
            budget = BudgetSpec::parse(value);
        } catch (const std::exception& e) {
            throw bad(e.what());
        }
    } else if (key == "trials") {
        trials = unsigned_value();
    } else if (key == "seed") {
        seed = unsigned_value();
    } else if (key == "out") {
        out = value;
    } else if (key == "threads") {
        threads = unsigned_value();
    } else if (key == "wall_time") {
        auto b = parse_bool(value);
        if (!b) {
            throw bad("expected true or false");
        }
        wall_time = *b;
    } else {
        throw ConfigError({"unknown key '" + key + "'"});
    }
}

ExperimentConfig ExperimentConfig::from_stream(std::istream& in)
{
    ExperimentConfig c;
    std::vector<std::string> errors;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line.substr(0, line.find('#')));
        if (t.empty()) {
            continue;
        }
        const auto eq = t.find('=');
        if (eq == std::string::npos) {
            errors.push_back("line " + std::to_string(lineno) + ": expected key=value");
            continue;
        }
        try {
            c.set(t.substr(0, eq), t.substr(eq + 1));
        } catch (const ConfigError& e) {
            for (const auto& v : e.violations()) {
                errors.push_back("line " + std::to_string(lineno) + ": " + v);
            }
        }
    }
    if (!errors.empty()) {
        throw ConfigError(std::move(errors));
    }
    return c;
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError({"cannot open config file '" + path + "'"});
    }
    return from_stream(in);
}

std::uint64_t trial_seed(std::uint64_t base, std::size_t n, std::size_t trial)
{
    return base ^ splitmix64((static_cast<std::uint64_t>(n) << 32) | static_cast<std::uint64_t>(trial));
}

// ---------------------------------------------------------------------------
// CSV

namespace {

constexpr std::string_view kHeader =
    "trial_id,seed,problem,n,algo,mutation,crossover,pc,mu,budget,evaluations_used,generations,"
    "first_pareto_hit_evals,coverage_fraction,success,wall_time_ms";
constexpr std::size_t kColumns = 16;

std::string quote(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (const char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else {
            fields.back() += c;
        }
    }
    if (quoted) {
        throw std::runtime_error("unterminated quote in CSV line");
    }
    return fields;
}

template <class T>
std::string opt(const std::optional<T>& v)
{
    if (!v) {
        return {};
    }
    if constexpr (std::is_floating_point_v<T>) {
        return format_double(*v);
    } else {
        return std::to_string(*v);
    }
}

} // namespace

void write_csv(std::ostream& out, const std::vector<TrialRecord>& records)
{
    out << "# schema=" << kCsvSchema << '\n' << kHeader << '\n';
    for (const auto& r : records) {
        out << r.trial_id << ',' << r.seed << ',' << quote(r.problem) << ',' << r.n << ',' << quote(r.algo) << ','
            << quote(r.mutation) << ',' << quote(r.crossover) << ',' << format_double(r.pc) << ',' << opt(r.mu)
            << ',' << r.budget << ',' << r.evaluations_used << ',' << r.generations << ','
            << opt(r.first_pareto_hit_evals) << ',' << format_double(r.coverage_fraction) << ','
            << (r.success ? "true" : "false") << ',' << opt(r.wall_time_ms) << '\n';
    }
}

std::string format_csv(const std::vector<TrialRecord>& records)
{
    std::ostringstream os;
    write_csv(os, records);
    return os.str();
}

std::vector<TrialRecord> parse_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line) || line != "# schema=" + std::string(kCsvSchema)) {
        throw std::runtime_error("missing or unsupported schema line (expected '# schema=" + std::string(kCsvSchema)
                                 + "')");
    }
    if (!std::getline(in, line) || line != kHeader) {
        throw std::runtime_error("unexpected CSV header");
    }
    std::vector<TrialRecord> out;
    std::size_t lineno = 2;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) {
            continue;
        }
        const auto f = split_csv_line(line);
        const std::string where = "line " + std::to_string(lineno);
        if (f.size() != kColumns) {
            throw std::runtime_error(where + ": expected " + std::to_string(kColumns) + " fields, got "
                                     + std::to_string(f.size()));
        }
        auto req = [&]<class T>(std::size_t i, T* dst) {
            auto v = parse_number<T>(f[i]);
            if (!v) {
                throw std::runtime_error(where + ": bad value '" + f[i] + "' in column " + std::to_string(i + 1));
            }
            *dst = *v;
        };
        auto optional_field = [&]<class T>(std::size_t i, std::optional<T>* dst) {
            if (f[i].empty()) {
                dst->reset();
            } else {
                T v{};
                req(i, &v);
                *dst = v;
            }
        };
        TrialRecord r;
        req(0, &r.trial_id);
        req(1, &r.seed);
        r.problem = f[2];
        req(3, &r.n);
        r.algo = f[4];
        r.mutation = f[5];
        r.crossover = f[6];
        req(7, &r.pc);
        optional_field(8, &r.mu);
        req(9, &r.budget);
        req(10, &r.evaluations_used);
        req(11, &r.generations);
        optional_field(12, &r.first_pareto_hit_evals);
        req(13, &r.coverage_fraction);
        auto b = parse_bool(f[14]);
        if (!b) {
            throw std::runtime_error(where + ": bad success flag '" + f[14] + "'");
        }
        r.success = *b;
        optional_field(15, &r.wall_time_ms);
        out.push_back(std::move(r));
    }
    return out;
}

std::vector<TrialRecord> read_csv_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open '" + path + "'");
    }
    return parse_csv(in);
}

// ---------------------------------------------------------------------------

TrialRecord run_trial(const ExperimentConfig& config, std::size_t n, std::size_t trial, const HookFactory& factory)
{
    const auto start = std::chrono::steady_clock::now();
    TrialRecord rec;
    rec.trial_id = trial;
    rec.seed = trial_seed(config.seed, n, trial);
    rec.problem = problem_label(config.problem);
    rec.n = n;
    rec.algo = config.algo;
    rec.mutation = config.mutation;
    rec.crossover = config.crossover;
    rec.pc = config.pc;
    if (uses_mu(config.algo)) {
        rec.mu = config.mu;
    }
    rec.budget = config.budget.for_length(n);

    const Problem problem = config.problem.make(n, rec.seed);
    const RunHooks hooks = factory ? factory(problem, n, trial) : RunHooks{};
    Rng rng(rec.seed);
    const Variation variation{MutationOperator::parse(config.mutation, n), parse_crossover(config.crossover),
                              config.pc};
    RunResult result;
    if (config.algo == "gsemo") {
        result = gsemo_run(problem, variation, rec.budget, rng, hooks);
    } else if (config.algo == "nsgaii") {
        result = nsgaii_run(problem, variation, config.mu, rec.budget, rng, hooks);
    } else if (config.algo == "blackbox:nsgaii") {
        result = elitist_blackbox_run(problem, config.mu, config.mu, nsga2_offspring(variation),
                                      layer_crowding_ranking, rec.budget, rng, hooks);
    } else if (config.algo == "blackbox:mutation") {
        const std::size_t lambda = config.lambda == 0 ? config.mu : config.lambda;
        result = elitist_blackbox_run(problem, config.mu, lambda, mutation_offspring(variation.mutation, lambda),
                                      layer_crowding_ranking, rec.budget, rng, hooks);
    } else {
        throw ConfigError({"unknown algo '" + config.algo + "'"});
    }

    rec.evaluations_used = result.evaluations;
    rec.generations = result.generations;
    rec.first_pareto_hit_evals = result.first_pareto_hit;
    rec.coverage_fraction = result.coverage;
    rec.success = result.success;
    if (config.wall_time) {
        rec.wall_time_ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    }
    return rec;
}

std::vector<TrialRecord> run_experiment(const ExperimentConfig& config, const HookFactory& hooks)
{
    config.validate();
    struct Job {
        std::size_t n;
        std::size_t trial;
    };
    std::vector<Job> jobs;
    for (const auto n : config.ns) {
        for (std::size_t i = 0; i < config.trials; ++i) {
            jobs.push_back({n, i});
        }
    }
    std::vector<TrialRecord> records(jobs.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        while (true) {
            const std::size_t j = next.fetch_add(1);
            if (j >= jobs.size()) {
                return;
            }
            try {
                records[j] = run_trial(config, jobs[j].n, jobs[j].trial, hooks);
            } catch (...) {
                const std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next = jobs.size();
            }
        }
    };
    std::size_t threads = config.threads != 0 ? config.threads : std::max(1U, std::thread::hardware_concurrency());
    threads = std::min(threads, jobs.size());
    if (threads <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < threads; ++t) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    // jobs were laid out in (n position, trial_id) order already

    if (!config.out.empty()) {
        std::ofstream out(config.out, std::ios::binary);
        if (!out) {
            throw std::runtime_error("cannot write '" + config.out + "'");
        }
        write_csv(out, records);
    }
    return records;
}

// ---------------------------------------------------------------------------

SlopeFit log_log_fit(const std::vector<double>& x, const std::vector<double>& y)
{
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("log-log fit needs at least two paired points");
    }
    const auto k = static_cast<double>(x.size());
    double sx = 0;
    double sy = 0;
    double sxx = 0;
    double sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0) || !(y[i] > 0)) {
            throw std::invalid_argument("log-log fit needs positive values");
        }
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double denom = k * sxx - sx * sx;
    if (denom == 0.0) {
        throw std::invalid_argument("log-log fit needs distinct x values");
    }
    SlopeFit fit;
    fit.points = x.size();
    fit.slope = (k * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / k;
    return fit;
}

Summary summarize(const std::vector<TrialRecord>& records)
{
    if (records.empty()) {
        throw std::invalid_argument("no records to summarize");
    }
    using GroupKey = std::tuple<std::string, std::string, std::string, std::string, double, std::optional<std::size_t>,
                                std::string>;
    auto group_of = [](const TrialRecord& r) {
        return GroupKey{r.problem, r.algo, r.mutation, r.crossover, r.pc, r.mu, std::string{}};
    };
    std::map<std::pair<GroupKey, std::pair<std::size_t, std::uint64_t>>, std::vector<const TrialRecord*>> cells;
    std::vector<GroupKey> group_order;
    for (const auto& r : records) {
        const auto g = group_of(r);
        if (std::find(group_order.begin(), group_order.end(), g) == group_order.end()) {
            group_order.push_back(g);
        }
        cells[{g, {r.n, r.budget}}].push_back(&r);
    }

    Summary s;
    for (const auto& g : group_order) {
        std::vector<double> xs;
        std::vector<double> ys;
        for (const auto& [key, members] : cells) {
            if (key.first != g) {
                continue;
            }
            SummaryRow row;
            const auto& first = *members.front();
            row.problem = first.problem;
            row.algo = first.algo;
            row.mutation = first.mutation;
            row.crossover = first.crossover;
            row.pc = first.pc;
            row.mu = first.mu;
            row.budget = first.budget;
            row.n = first.n;
            row.trials = members.size();
            std::vector<std::uint64_t> evals;
            for (const auto* m : members) {
                if (m->success) {
                    evals.push_back(m->evaluations_used);
                } else {
                    ++row.exhausted;
                }
            }
            row.successes = evals.size();
            row.success_rate = static_cast<double>(row.successes) / static_cast<double>(row.trials);
            if (!evals.empty()) {
                std::sort(evals.begin(), evals.end());
                const std::size_t h = evals.size() / 2;
                row.median_evaluations = evals.size() % 2 == 1
                                             ? static_cast<double>(evals[h])
                                             : (static_cast<double>(evals[h - 1]) + static_cast<double>(evals[h])) / 2;
                row.mean_evaluations = std::accumulate(evals.begin(), evals.end(), 0.0)
                                       / static_cast<double>(evals.size());
                row.max_evaluations = evals.back();
                xs.push_back(static_cast<double>(row.n));
                ys.push_back(*row.median_evaluations);
            }
            s.rows.push_back(row);
        }
        if (std::set<double>(xs.begin(), xs.end()).size() >= 3) {
            SlopeFit fit = log_log_fit(xs, ys);
            const auto& [problem, algo, mutation, cross, pc, mu, unused] = g;
            fit.label = problem + " " + algo + " " + mutation + " " + cross + " pc=" + format_double(pc)
                        + (mu ? " mu=" + std::to_string(*mu) : std::string{});
            s.slopes.push_back(fit);
        }
    }
    return s;
}

std::string format_summary(const Summary& summary)
{
    std::ostringstream os;
    os << "problem,algo,mutation,crossover,pc,mu,budget,n,trials,successes,success_rate,median_evals,mean_evals,"
          "max_evals,exhausted\n";
    for (const auto& r : summary.rows) {
        os << quote(r.problem) << ',' << quote(r.algo) << ',' << quote(r.mutation) << ',' << quote(r.crossover) << ','
           << format_double(r.pc) << ',' << opt(r.mu) << ',' << r.budget << ',' << r.n << ',' << r.trials << ','
           << r.successes << ',' << format_double(r.success_rate) << ',' << opt(r.median_evaluations) << ','
           << opt(r.mean_evaluations) << ',' << opt(r.max_evaluations) << ',' << r.exhausted << '\n';
    }
    for (const auto& f : summary.slopes) {
        os << "# log-log slope " << f.label << ": " << format_double(f.slope) << " over " << f.points
           << " lengths\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Claims for `emo verify`

namespace {

OracleReport equality_report(std::string claim, bool pass, std::string observed)
{
    OracleReport r;
    r.claim = std::move(claim);
    r.pass = pass;
    r.observed = std::move(observed);
    return r;
}

std::vector<OracleReport> check_rrrmo_front()
{
    std::vector<OracleReport> out;
    for (const std::size_t n : {5, 10, 15, 20}) {
        const Problem p(Rrrmo{n});
        const ParetoSet brute = brute_force_pareto(p);
        std::vector<BitString> closed;
        for (const auto& fp : rrrmo_front(n)) {
            closed.push_back(fp.x);
        }
        std::sort(closed.begin(), closed.end(),
                  [](const BitString& a, const BitString& b) { return a.to_string() < b.to_string(); });
        auto vectors = p.front_fitness();
        std::sort(vectors.begin(), vectors.end());
        const bool same = brute.fitness_vectors == vectors && brute.preimages == closed;
        out.push_back(equality_report("rrrmo-front n=" + std::to_string(n), same,
                                      std::to_string(brute.fitness_vectors.size()) + " vectors, "
                                          + std::to_string(brute.preimages.size()) + " pre-images"));
    }
    return out;
}

std::vector<OracleReport> check_urrrmo_front()
{
    const Problem p(Urrrmo{16});
    const ParetoSet brute = brute_force_pareto(p);
    const UrrrmoFront closed = urrrmo_front(16, true);
    auto pre = *closed.preimages;
    std::sort(pre.begin(), pre.end(),
              [](const BitString& a, const BitString& b) { return a.to_string() < b.to_string(); });
    const bool same = brute.fitness_vectors == closed.fitness_vectors && brute.preimages == pre
                      && closed.preimage_count == pre.size();
    return {equality_report("urrrmo-front n=16", same,
                            std::to_string(brute.fitness_vectors.size()) + " vectors, "
                                + std::to_string(brute.preimages.size()) + " pre-images")};
}

std::vector<OracleReport> check_hamming()
{
    return {hamming_bounds_check(32, 0, 1), hamming_bounds_check(64, 100'000, 2)};
}

std::vector<OracleReport> check_flip_frequency()
{
    constexpr std::size_t n = 100;
    Rng rng(7);
    const BitString x = random_bitstring(n, rng);
    std::vector<OracleReport> out;
    const auto std_op = [](const BitString& y, Rng& r) { return standard_bit_mutation(y, r); };
    out.push_back(operator_flip_frequency(std_op, x, 1.0 / n, 1'000'000, 11).report);
    for (const double rate : {0.25, 0.5, 1.0}) {
        const auto hyper = [rate](const BitString& y, Rng& r) { return hypermutation(y, rate, r); };
        auto rep = operator_flip_frequency(hyper, x, rate / 2, 1'000'000, 12).report;
        rep.claim += " hyper r=" + format_double(rate);
        out.push_back(rep);
    }
    out.front().claim += " std";
    return out;
}

std::vector<OracleReport> check_complement()
{
    constexpr std::size_t n = 100;
    constexpr std::uint64_t pairs = 1'000'000;
    Rng rng(21);
    std::uint64_t violations = 0;
    for (std::uint64_t i = 0; i < pairs; ++i) {
        const BitString x = random_bitstring(n, rng);
        const BitString y = random_bitstring(n, rng);
        const auto [z, zbar] = uniform_crossover(x, y, rng);
        if (bit_xor(z, zbar) != bit_xor(x, y)) {
            ++violations;
        }
    }
    OracleReport r = equality_report("crossover-complement", violations == 0,
                                     std::to_string(violations) + " violations");
    r.samples = pairs;
    return {r};
}

std::vector<OracleReport> check_chi_square()
{
    constexpr std::size_t n = 8;
    Rng rng(31);
    std::vector<std::size_t> m(n);
    std::iota(m.begin(), m.end(), std::size_t{1});
    for (std::size_t i = n; i > 1; --i) {
        std::swap(m[i - 1], m[rng.below(i)]);
    }
    const Permutation sigma = Permutation::from_one_based(m);
    const BitString z = random_bitstring(n, rng);
    const BitString x = random_bitstring(n, rng);
    std::vector<OracleReport> out;
    for (const std::string name : {"std", "unbiased:uniform", "unbiased:point:2"}) {
        const auto op = MutationOperator::parse(name, n);
        auto rep = unbiasedness_chi_square([&op](const BitString& y, Rng& r) { return op.apply(y, r); }, x, sigma, z,
                                           1'000'000, 1e-3, 41);
        rep.claim += " " + name;
        out.push_back(rep);
    }
    return out;
}

std::vector<OracleReport> check_lemmas()
{
    std::vector<OracleReport> out;
    constexpr std::size_t n = 10;
    const Problem p(Rrrmo{n});
    const Variation onepoint{MutationOperator::standard(n), CrossoverKind::OnePoint, 0.5};
    {
        InvariantMonitor mon(p);
        Rng rng(3);
        const auto res = gsemo_run(p, onepoint, 100 * n * n * n * n, rng, mon.hooks());
        out.push_back(equality_report("lemmas gsemo rrrmo n=10", mon.violations() == 0 && res.success,
                                      std::to_string(mon.checks()) + " checks, " + std::to_string(mon.violations())
                                          + " violations"));
    }
    {
        const std::size_t mu = 2 * n + 6;
        InvariantMonitor mon(p, mu);
        Rng rng(4);
        const auto res = nsgaii_run(p, onepoint, mu, 10'000'000, rng, mon.hooks());
        out.push_back(equality_report("lemmas nsgaii rrrmo n=10", mon.violations() == 0 && res.success,
                                      std::to_string(mon.checks()) + " checks, " + std::to_string(mon.violations())
                                          + " violations"));
    }
    return out;
}

std::vector<OracleReport> check_jump_probes()
{
    constexpr std::size_t n = 40;
    std::vector<OracleReport> out;
    const auto in_f = [](const BitString& y) { return rrrmo_membership(y, n).in_f; };
    for (const std::string preset : {"uniform", "binomial-1-over-n", "point:n/5"}) {
        const auto radius = RadiusDistribution::preset(preset, n);
        ProbeConfig cfg;
        cfg.samples = 100'000;
        cfg.seed = 51;
        cfg.expected_hits = 0;
        auto rep = jump_probability_probe(
            n, g_prime_predicate(n), in_f,
            [&radius](const BitString& y, Rng& r) { return unary_unbiased_mutation(y, radius, r); }, cfg);
        rep.report.claim += " rrrmo n=40 " + preset;
        out.push_back(rep.report);
    }
    return out;
}

} // namespace

const std::vector<ClaimInfo>& claim_registry()
{
    static const std::vector<ClaimInfo> claims{
        {"rrrmo-front", "exhaustive Pareto set of RRRMO equals the closed form, n in {5,10,15,20}", check_rrrmo_front},
        {"urrrmo-front", "exhaustive Pareto set of uRRRMO at n=16: 9 vectors, 144 pre-images", check_urrrmo_front},
        {"hamming-bounds", "H(U,P) in [n/8,3n/8] and H(C,T) in [3n/16,5n/16]", check_hamming},
        {"flip-frequency", "per-position flip rates of standard mutation and hypermutation", check_flip_frequency},
        {"crossover-complement", "uniform crossover children satisfy z xor z' = x xor y", check_complement},
        {"unbiasedness", "chi-square: op(sigma(x) xor z) ~ sigma(op(x)) xor z at n=8", check_chi_square},
        {"lemmas", "antichain and crowding-distance lemmas along short runs", check_lemmas},
        {"jump-probes", "unbiased operators never jump from G' to F at n=40 (1e5 samples)", check_jump_probes},
    };
    return claims;
}

} // namespace emo

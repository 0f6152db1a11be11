#include "qdent/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "qdent/errors.hpp"
#include "qdent/parallel.hpp"

namespace qdent {

namespace {

std::string fmt8(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.8g", v);
    return buf;
}

double round8(double v) { return std::stod(fmt8(v)); }

std::vector<std::string> split_ws(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> tokens;
    std::string tok;
    while (in >> tok) tokens.push_back(tok);
    return tokens;
}

} // namespace

EstimatorSpec EstimatorSpec::parse(const std::string& text) {
    const auto tokens = split_ws(text);
    if (tokens.empty()) throw std::invalid_argument("empty estimator spec");
    EstimatorSpec spec;
    spec.id = parse_estimator_id(tokens[0]);
    for (std::size_t i = 1; i < tokens.size(); ++i) {
        const auto eq = tokens[i].find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("expected key=value in estimator spec: " + tokens[i]);
        }
        const std::string key = tokens[i].substr(0, eq);
        const std::string value = tokens[i].substr(eq + 1);
        if (key == "m") {
            spec.spacing.m = std::stoi(value);
        } else if (key == "h") {
            spec.kernel.h = std::stod(value);
        } else if (key == "eps") {
            spec.kernel.eps = std::stod(value);
        } else if (key == "quad-tol") {
            spec.kernel.quadrature.tolerance = std::stod(value);
        } else if (key == "quad-max-nodes") {
            spec.kernel.quadrature.max_nodes = std::stoi(value);
        } else if (key == "null") {
            if (value == "normal") {
                spec.null_model.shape = Distribution::normal(0.0, 1.0);
            } else if (value == "uniform") {
                spec.null_model.shape = Distribution::uniform01();
            } else {
                throw std::invalid_argument("null must be 'normal' or 'uniform'");
            }
        } else {
            throw std::invalid_argument("unknown estimator option: " + key);
        }
    }
    return spec;
}

double apply_estimator(const EstimatorSpec& spec, const Sample& x) {
    switch (spec.id) {
        case EstimatorId::Vasicek:       return vasicek(x, spec.spacing).value;
        case EstimatorId::VanEs:         return van_es(x, spec.spacing).value;
        case EstimatorId::Correa:        return correa(x, spec.spacing).value;
        case EstimatorId::Wieczorkowski: return wieczorkowski(x, spec.spacing).value;
        case EstimatorId::Ebrahimi:      return ebrahimi(x, spec.spacing).value;
        case EstimatorId::Yousefzadeh:   return yousefzadeh(x, spec.spacing).value;
        case EstimatorId::Kernel:        return entropy_hat(x, spec.kernel).value;
        case EstimatorId::ParzenStar:    return parzen_entropy_star(x, spec.null_model,
                                                                    spec.kernel).value;
        case EstimatorId::ParzenTilde:   return parzen_entropy_tilde(x, spec.null_model,
                                                                     spec.kernel.eps).value;
    }
    throw std::logic_error("unhandled estimator id");
}

void ExperimentPlan::validate() const {
    if (n < 2) throw std::invalid_argument("plan needs n >= 2");
    if (replications < 2) throw std::invalid_argument("plan needs at least 2 replications");
    if (estimators.empty()) throw std::invalid_argument("plan lists no estimators");
    if (contaminant && !(contamination >= 0.0 && contamination <= 1.0)) {
        throw std::invalid_argument("contamination fraction outside [0,1]");
    }
    for (const auto& spec : estimators) {
        switch (spec.id) {
            case EstimatorId::Vasicek:
            case EstimatorId::VanEs:
            case EstimatorId::Correa:
            case EstimatorId::Wieczorkowski:
            case EstimatorId::Ebrahimi:
            case EstimatorId::Yousefzadeh:
                if (spec.spacing.m < 1 ||
                    2 * static_cast<std::size_t>(spec.spacing.m) > n) {
                    throw std::invalid_argument("window m invalid for n in " + spec.label());
                }
                if (spec.id == EstimatorId::Yousefzadeh && n < 4) {
                    throw std::invalid_argument("yousefzadeh needs n >= 4");
                }
                break;
            case EstimatorId::Kernel:
            case EstimatorId::ParzenStar:
            case EstimatorId::ParzenTilde:
                spec.kernel.validate();
                break;
        }
    }
}

ExperimentPlan ExperimentPlan::parse(std::istream& in) {
    ExperimentPlan plan;
    std::string line;
    bool have_dist = false;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            if (!split_ws(line).empty()) {
                throw std::invalid_argument("malformed plan line: " + line);
            }
            continue;
        }
        auto trim = [](std::string s) {
            const auto first = s.find_first_not_of(" \t");
            const auto last = s.find_last_not_of(" \t");
            return (first == std::string::npos) ? std::string{}
                                                : s.substr(first, last - first + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "dist") {
            plan.dist = Distribution::parse(value);
            have_dist = true;
        } else if (key == "contaminant") {
            plan.contaminant = Distribution::parse(value);
        } else if (key == "contamination") {
            plan.contamination = std::stod(value);
        } else if (key == "n") {
            plan.n = static_cast<std::size_t>(std::stoull(value));
        } else if (key == "reps") {
            plan.replications = static_cast<std::size_t>(std::stoull(value));
        } else if (key == "seed") {
            plan.seed = std::stoull(value);
        } else if (key == "threads") {
            plan.threads = static_cast<unsigned>(std::stoul(value));
        } else if (key == "estimator") {
            plan.estimators.push_back(EstimatorSpec::parse(value));
        } else {
            throw std::invalid_argument("unknown plan key: " + key);
        }
    }
    if (!have_dist) throw std::invalid_argument("plan is missing 'dist'");
    plan.validate();
    return plan;
}

std::vector<McReport> run_experiment(const ExperimentPlan& plan) {
    plan.validate();
    const std::size_t reps = plan.replications;
    const std::size_t num_est = plan.estimators.size();
    std::vector<double> values(reps * num_est);
    std::vector<unsigned char> failed(reps * num_est, 0);

    parallel_for(reps, plan.threads, [&](std::size_t r) {
        RngStream rng(plan.seed, r);
        const Sample x = plan.contaminant
                             ? sample_contaminated(plan.dist, *plan.contaminant,
                                                   plan.contamination, plan.n, rng)
                             : sample(plan.dist, plan.n, rng);
        for (std::size_t e = 0; e < num_est; ++e) {
            try {
                values[r * num_est + e] = apply_estimator(plan.estimators[e], x);
            } catch (const Error&) {
                failed[r * num_est + e] = 1;
            }
        }
    });

    const double truth = plan.dist.true_entropy();
    std::vector<McReport> reports(num_est);
    for (std::size_t e = 0; e < num_est; ++e) {
        McReport& report = reports[e];
        report.estimator = plan.estimators[e].label();
        double sum = 0.0;
        std::size_t used = 0;
        for (std::size_t r = 0; r < reps; ++r) {
            if (failed[r * num_est + e]) {
                ++report.failures;
            } else {
                sum += values[r * num_est + e];
                ++used;
            }
        }
        if (used == 0) continue;
        report.mean = sum / static_cast<double>(used);
        double var = 0.0;
        double mse = 0.0;
        for (std::size_t r = 0; r < reps; ++r) {
            if (failed[r * num_est + e]) continue;
            const double v = values[r * num_est + e];
            var += (v - report.mean) * (v - report.mean);
            mse += (v - truth) * (v - truth);
        }
        report.variance = var / static_cast<double>(used);
        report.mse = mse / static_cast<double>(used);
        report.bias = report.mean - truth;
    }
    return reports;
}

std::vector<McReport> run_contamination(const ExperimentPlan& plan) {
    if (!plan.contaminant) {
        throw std::invalid_argument("contamination run needs a contaminant distribution");
    }
    return run_experiment(plan);
}

std::string assemble_table(const std::vector<McReport>& reports, TableFormat format,
                           const std::map<std::string, std::string>& meta) {
    std::ostringstream out;
    switch (format) {
        case TableFormat::Csv: {
            for (const auto& [key, value] : meta) out << "# " << key << ": " << value << "\n";
            out << "estimator,estimate,bias,variance,mse,failures\n";
            for (const auto& r : reports) {
                out << r.estimator << ',' << fmt8(r.mean) << ',' << fmt8(r.bias) << ','
                    << fmt8(r.variance) << ',' << fmt8(r.mse) << ',' << r.failures << "\n";
            }
            break;
        }
        case TableFormat::Json: {
            nlohmann::json doc;
            doc["meta"] = meta;
            doc["reports"] = nlohmann::json::array();
            for (const auto& r : reports) {
                doc["reports"].push_back({{"estimator", r.estimator},
                                          {"estimate", round8(r.mean)},
                                          {"bias", round8(r.bias)},
                                          {"variance", round8(r.variance)},
                                          {"mse", round8(r.mse)},
                                          {"failures", r.failures}});
            }
            out << doc.dump(2) << "\n";
            break;
        }
        case TableFormat::Text: {
            for (const auto& [key, value] : meta) out << "# " << key << ": " << value << "\n";
            char line[200];
            std::snprintf(line, sizeof(line), "%-12s %14s %14s %14s %14s %9s\n", "estimator",
                          "estimate", "bias", "variance", "mse", "failures");
            out << line;
            for (const auto& r : reports) {
                std::snprintf(line, sizeof(line), "%-12s %14.8g %14.8g %14.8g %14.8g %9zu\n",
                              r.estimator.c_str(), r.mean, r.bias, r.variance, r.mse, r.failures);
                out << line;
            }
            break;
        }
    }
    return out.str();
}

std::vector<McReport> parse_csv_table(std::istream& in) {
    std::vector<McReport> reports;
    std::string line;
    bool header_seen = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "estimator,estimate,bias,variance,mse,failures") {
                throw std::runtime_error("unexpected csv header: " + line);
            }
            header_seen = true;
            continue;
        }
        std::istringstream fields(line);
        std::string tok;
        std::vector<std::string> cols;
        while (std::getline(fields, tok, ',')) cols.push_back(tok);
        if (cols.size() != 6) throw std::runtime_error("malformed csv row: " + line);
        McReport r;
        r.estimator = cols[0];
        r.mean = std::stod(cols[1]);
        r.bias = std::stod(cols[2]);
        r.variance = std::stod(cols[3]);
        r.mse = std::stod(cols[4]);
        r.failures = static_cast<std::size_t>(std::stoull(cols[5]));
        reports.push_back(r);
    }
    if (!header_seen) throw std::runtime_error("csv table has no header row");
    return reports;
}

} // namespace qdent

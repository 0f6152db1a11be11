#include "qdent/distributions.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <vector>

#include "qdent/special_functions.hpp"

namespace qdent {

namespace {

// Wichura's PPND16 rational approximations for the standard normal quantile.
double ppnd16(double u) {
    const double q = u - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        const double num =
            q * (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                       6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                     1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                   1.3314166789178437745e+2) * r + 3.3871328727963666080e0);
        const double den =
            (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                  3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
              4.2313330701600911252e+1) * r + 1.0);
        return num / den;
    }
    double r = (q < 0.0) ? u : 1.0 - u;
    r = std::sqrt(-std::log(r));
    double value;
    if (r <= 5.0) {
        r -= 1.6;
        const double num =
            (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
                3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
              4.63033784615654529590e0) * r + 1.42343711074968357734e0);
        const double den =
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
              2.05319162663775882187e0) * r + 1.0);
        value = num / den;
    } else {
        r -= 5.0;
        const double num =
            (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
              5.46378491116411436990e0) * r + 6.65790464350110377720e0);
        const double den =
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
        value = num / den;
    }
    return (q < 0.0) ? -value : value;
}

// Continued fraction for the regularized incomplete beta (Lentz).
double ibeta_cf(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 300; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15) break;
    }
    return h;
}

// Regularized incomplete beta with the complement of x supplied by the
// caller, so that neither tail loses precision to cancellation.
double ibeta(double a, double b, double x, double cx) {
    if (x <= 0.0) return 0.0;
    if (cx <= 0.0) return 1.0;
    const double front = std::exp(a * std::log(x) + b * std::log(cx) - log_beta(a, b));
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * ibeta_cf(a, b, x) / a;
    }
    return 1.0 - front * ibeta_cf(b, a, cx) / b;
}

double student_t_cdf(double dof, double x) {
    if (x == 0.0) return 0.5;
    // F(x) = 1/2 + sgn(x)/2 * I_y(1/2, nu/2), y = x^2/(nu + x^2); y and its
    // complement are both formed without subtraction
    const double y = x * x / (dof + x * x);
    const double cy = dof / (dof + x * x);
    const double p = 0.5 * ibeta(0.5, 0.5 * dof, y, cy);
    return (x > 0.0) ? 0.5 + p : 0.5 - p;
}

double student_t_log_pdf(double dof, double x) {
    return log_gamma(0.5 * (dof + 1.0)) - log_gamma(0.5 * dof) -
           0.5 * std::log(dof * M_PI) - 0.5 * (dof + 1.0) * std::log1p(x * x / dof);
}

// Inversion of the Student-t cdf: bracket by doubling, then bisection with
// Newton steps inside the bracket. Newton is quadratic near the root, so the
// iteration runs down to rounding noise, well inside the 1e-10 contract.
double student_t_quantile(double dof, double u) {
    if (u == 0.5) return 0.0;
    if (u < 0.5) return -student_t_quantile(dof, 1.0 - u);
    double lo = 0.0;
    double hi = 1.0;
    while (student_t_cdf(dof, hi) < u) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e300) break;
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = student_t_cdf(dof, x) - u;
        if (f == 0.0) return x;
        if (f > 0.0) hi = x; else lo = x;
        const double dens = std::exp(student_t_log_pdf(dof, x));
        double next = x - f / dens;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - x) <= 1e-14 * std::max(1.0, std::fabs(x))) {
            return next;
        }
        x = next;
    }
    return x;
}

double format_check(double v, const char* name) {
    if (!(v > 0.0)) {
        throw std::invalid_argument(std::string(name) + " must be positive");
    }
    return v;
}

std::string fmt_param(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
}

} // namespace

double normal_quantile(double u) {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error("normal_quantile requires u in (0,1)");
    }
    return ppnd16(u);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

Distribution Distribution::normal(double mean, double sd) {
    return {DistKind::Normal, mean, format_check(sd, "sd")};
}
Distribution Distribution::uniform01() { return {DistKind::Uniform01, 0.0, 1.0}; }
Distribution Distribution::weibull(double shape, double scale) {
    return {DistKind::Weibull, format_check(shape, "shape"), format_check(scale, "scale")};
}
Distribution Distribution::exponential(double rate) {
    return {DistKind::Exponential, format_check(rate, "rate"), 0.0};
}
Distribution Distribution::student_t(double dof) {
    if (!(dof >= 1.0)) throw std::invalid_argument("Student-t needs dof >= 1");
    return {DistKind::StudentT, dof, 0.0};
}
Distribution Distribution::cauchy() { return {DistKind::Cauchy, 0.0, 0.0}; }

double Distribution::quantile(double u) const {
    if (!(u > 0.0 && u < 1.0)) {
        throw std::domain_error("quantile requires u in (0,1)");
    }
    switch (kind_) {
        case DistKind::Normal:      return a_ + b_ * ppnd16(u);
        case DistKind::Uniform01:   return u;
        case DistKind::Weibull:     return b_ * std::pow(-std::log1p(-u), 1.0 / a_);
        case DistKind::Exponential: return -std::log1p(-u) / a_;
        case DistKind::StudentT:    return student_t_quantile(a_, u);
        case DistKind::Cauchy:      return std::tan(M_PI * (u - 0.5));
    }
    return 0.0;
}

double Distribution::cdf(double x) const {
    switch (kind_) {
        case DistKind::Normal:      return normal_cdf((x - a_) / b_);
        case DistKind::Uniform01:   return x <= 0.0 ? 0.0 : (x >= 1.0 ? 1.0 : x);
        case DistKind::Weibull:     return x <= 0.0 ? 0.0 : -std::expm1(-std::pow(x / b_, a_));
        case DistKind::Exponential: return x <= 0.0 ? 0.0 : -std::expm1(-a_ * x);
        case DistKind::StudentT:    return student_t_cdf(a_, x);
        case DistKind::Cauchy:      return 0.5 + std::atan(x) / M_PI;
    }
    return 0.0;
}

double Distribution::pdf(double x) const {
    switch (kind_) {
        case DistKind::Normal: {
            const double z = (x - a_) / b_;
            return std::exp(-0.5 * z * z) / (b_ * std::sqrt(2.0 * M_PI));
        }
        case DistKind::Uniform01:
            return (x > 0.0 && x < 1.0) ? 1.0 : 0.0;
        case DistKind::Weibull: {
            if (x <= 0.0) return 0.0;
            return std::exp(log_pdf(x));
        }
        case DistKind::Exponential:
            return x < 0.0 ? 0.0 : a_ * std::exp(-a_ * x);
        case DistKind::StudentT:
            return std::exp(student_t_log_pdf(a_, x));
        case DistKind::Cauchy:
            return 1.0 / (M_PI * (1.0 + x * x));
    }
    return 0.0;
}

double Distribution::log_pdf(double x) const {
    switch (kind_) {
        case DistKind::Normal: {
            const double z = (x - a_) / b_;
            return -0.5 * z * z - std::log(b_) - 0.5 * std::log(2.0 * M_PI);
        }
        case DistKind::Uniform01:
            return (x > 0.0 && x < 1.0) ? 0.0 : -HUGE_VAL;
        case DistKind::Weibull: {
            if (x <= 0.0) return -HUGE_VAL;
            const double t = std::pow(x / b_, a_);
            return std::log(a_ / b_) + (a_ - 1.0) * std::log(x / b_) - t;
        }
        case DistKind::Exponential:
            return x < 0.0 ? -HUGE_VAL : std::log(a_) - a_ * x;
        case DistKind::StudentT:
            return student_t_log_pdf(a_, x);
        case DistKind::Cauchy:
            return -std::log(M_PI) - std::log1p(x * x);
    }
    return -HUGE_VAL;
}

double Distribution::pdf_deriv1(double x) const {
    // f' = f * (log f)'
    switch (kind_) {
        case DistKind::Normal: {
            const double z = (x - a_) / b_;
            return -(z / b_) * pdf(x);
        }
        case DistKind::Uniform01:
            return 0.0;
        case DistKind::Weibull: {
            if (x <= 0.0) return 0.0;
            const double t = std::pow(x / b_, a_);
            return pdf(x) * ((a_ - 1.0) - a_ * t) / x;
        }
        case DistKind::Exponential:
            return x < 0.0 ? 0.0 : -a_ * pdf(x);
        case DistKind::StudentT: {
            const double g1 = -(a_ + 1.0) * x / (a_ + x * x);
            return pdf(x) * g1;
        }
        case DistKind::Cauchy: {
            const double g1 = -2.0 * x / (1.0 + x * x);
            return pdf(x) * g1;
        }
    }
    return 0.0;
}

double Distribution::pdf_deriv2(double x) const {
    // f'' = f * ((log f)'^2 + (log f)'')
    switch (kind_) {
        case DistKind::Normal: {
            const double z = (x - a_) / b_;
            return ((z * z - 1.0) / (b_ * b_)) * pdf(x);
        }
        case DistKind::Uniform01:
            return 0.0;
        case DistKind::Weibull: {
            if (x <= 0.0) return 0.0;
            const double t = std::pow(x / b_, a_);
            const double g1 = ((a_ - 1.0) - a_ * t) / x;
            const double g2 = -(a_ - 1.0) * (1.0 + a_ * t) / (x * x);
            return pdf(x) * (g1 * g1 + g2);
        }
        case DistKind::Exponential:
            return x < 0.0 ? 0.0 : a_ * a_ * pdf(x);
        case DistKind::StudentT: {
            const double denom = a_ + x * x;
            const double g1 = -(a_ + 1.0) * x / denom;
            const double g2 = -(a_ + 1.0) * (a_ - x * x) / (denom * denom);
            return pdf(x) * (g1 * g1 + g2);
        }
        case DistKind::Cauchy: {
            const double denom = 1.0 + x * x;
            const double g1 = -2.0 * x / denom;
            const double g2 = -2.0 * (1.0 - x * x) / (denom * denom);
            return pdf(x) * (g1 * g1 + g2);
        }
    }
    return 0.0;
}

double Distribution::true_entropy() const {
    switch (kind_) {
        case DistKind::Normal:
            return std::log(b_ * std::sqrt(2.0 * M_PI * M_E));
        case DistKind::Uniform01:
            return 0.0;
        case DistKind::Weibull:
            return euler_gamma * (1.0 - 1.0 / a_) + std::log(b_ / a_) + 1.0;
        case DistKind::Exponential:
            return 1.0 - std::log(a_);
        case DistKind::StudentT:
        case DistKind::Cauchy: {
            const double nu = (kind_ == DistKind::Cauchy) ? 1.0 : a_;
            return 0.5 * (nu + 1.0) * (digamma(0.5 * (1.0 + nu)) - digamma(0.5 * nu)) +
                   0.5 * std::log(nu) + log_beta(0.5 * nu, 0.5);
        }
    }
    return 0.0;
}

std::string Distribution::to_string() const {
    switch (kind_) {
        case DistKind::Normal:      return "normal(" + fmt_param(a_) + "," + fmt_param(b_) + ")";
        case DistKind::Uniform01:   return "uniform";
        case DistKind::Weibull:     return "weibull(" + fmt_param(a_) + "," + fmt_param(b_) + ")";
        case DistKind::Exponential: return "exp(" + fmt_param(a_) + ")";
        case DistKind::StudentT:    return "t(" + fmt_param(a_) + ")";
        case DistKind::Cauchy:      return "cauchy";
    }
    return "?";
}

Distribution Distribution::parse(const std::string& text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) {
            s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        }
    }
    std::string name = s;
    std::vector<double> args;
    const auto open = s.find('(');
    if (open != std::string::npos) {
        if (s.back() != ')') throw std::invalid_argument("bad distribution spec: " + text);
        name = s.substr(0, open);
        std::string body = s.substr(open + 1, s.size() - open - 2);
        std::size_t pos = 0;
        while (pos < body.size()) {
            const auto comma = body.find(',', pos);
            const std::string tok = body.substr(pos, comma == std::string::npos ? std::string::npos
                                                                                : comma - pos);
            try {
                std::size_t used = 0;
                args.push_back(std::stod(tok, &used));
                if (used != tok.size()) throw std::invalid_argument(tok);
            } catch (const std::exception&) {
                throw std::invalid_argument("bad distribution parameter '" + tok + "' in " + text);
            }
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
    }
    auto want = [&](std::size_t k) {
        if (args.size() != k) {
            throw std::invalid_argument("distribution '" + name + "' takes " +
                                        std::to_string(k) + " parameter(s)");
        }
    };
    if (name == "normal" || name == "n") {
        if (args.empty()) return normal(0.0, 1.0);
        want(2);
        return normal(args[0], args[1]);
    }
    if (name == "uniform" || name == "unif") { want(0); return uniform01(); }
    if (name == "weibull") { want(2); return weibull(args[0], args[1]); }
    if (name == "exp" || name == "exponential") {
        if (args.empty()) return exponential(1.0);
        want(1);
        return exponential(args[0]);
    }
    if (name == "t" || name == "student") { want(1); return student_t(args[0]); }
    if (name == "cauchy") { want(0); return cauchy(); }
    throw std::invalid_argument("unknown distribution: " + text);
}

Sample sample(const Distribution& d, std::size_t n, RngStream& rng) {
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        values[i] = d.quantile(rng.uniform());
    }
    return Sample(std::move(values));
}

Sample sample_contaminated(const Distribution& base, const Distribution& contaminant,
                           double frac, std::size_t n, RngStream& rng) {
    if (!(frac >= 0.0 && frac <= 1.0)) {
        throw std::domain_error("contamination fraction must be in [0,1]");
    }
    // Flags live on their own substream so the variate stream stays aligned
    // with plain sampling; frac = 0 then reproduces sample() bit for bit.
    RngStream flags = rng.substream(0x666c6167); // "flag"
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) {
        const bool swap = flags.uniform() < frac;
        const double u = rng.uniform();
        values[i] = (swap ? contaminant : base).quantile(u);
    }
    return Sample(std::move(values));
}

} // namespace qdent

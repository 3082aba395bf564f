#include "kronlab/frequencies.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>

#include "json.hpp"

#include "kronlab/error.hpp"

namespace kron {

namespace {

double mu_value(const PowerLawParams& p, int n) {
    switch (p.mu) {
        case MuRule::Zero: return 0.0;
        case MuRule::InverseN: return p.c / static_cast<double>(n);
        case MuRule::InverseLogN: return p.c / std::log(static_cast<double>(n) + 1.0);
    }
    return 0.0;
}

std::string mu_name(MuRule r) {
    switch (r) {
        case MuRule::Zero: return "zero";
        case MuRule::InverseN: return "inverse_n";
        case MuRule::InverseLogN: return "inverse_log_n";
    }
    return "zero";
}

MuRule mu_from_name(const std::string& s) {
    if (s == "zero" || s.empty()) return MuRule::Zero;
    if (s == "inverse_n") return MuRule::InverseN;
    if (s == "inverse_log_n") return MuRule::InverseLogN;
    fail(ErrorCode::InvalidArgument, "unknown mu rule: " + s);
}

std::vector<double> make_prefix(SystemKind kind, double mass, const PowerLawParams& pl, int count) {
    if (count < 1) fail(ErrorCode::InvalidArgument, "frequency count must be >= 1");
    std::vector<double> w;
    w.reserve(static_cast<std::size_t>(count));
    switch (kind) {
        case SystemKind::PrimeLog: {
            for (std::uint64_t p : first_primes(count))
                w.push_back(std::log(static_cast<double>(p)));
            break;
        }
        case SystemKind::Dispersion: {
            for (int n = 1; n <= count; ++n)
                w.push_back(std::sqrt(static_cast<double>(n) * n + mass * mass));
            break;
        }
        case SystemKind::PowerLaw: {
            for (int n = 1; n <= count; ++n)
                w.push_back(pl.A * std::pow(static_cast<double>(n), pl.alpha) * (1.0 + mu_value(pl, n)));
            break;
        }
        case SystemKind::Explicit:
            fail(ErrorCode::Internal, "explicit systems have no generator");
    }
    return w;
}

} // namespace

std::vector<std::uint64_t> first_primes(int n) {
    if (n < 1) fail(ErrorCode::InvalidArgument, "prime count must be >= 1");
    // Sieve bound n(log n + log log n) is valid for n >= 6.
    std::size_t bound = 15;
    if (n >= 6) {
        double x = static_cast<double>(n);
        bound = static_cast<std::size_t>(x * (std::log(x) + std::log(std::log(x)))) + 2;
    }
    for (;;) {
        std::vector<bool> composite(bound + 1, false);
        std::vector<std::uint64_t> primes;
        for (std::size_t i = 2; i <= bound; ++i) {
            if (composite[i]) continue;
            primes.push_back(i);
            if (static_cast<int>(primes.size()) == n) return primes;
            for (std::size_t j = i * i; j <= bound; j += i) composite[j] = true;
        }
        bound *= 2;
    }
}

FrequencySystem FrequencySystem::prime_log(int count) {
    FrequencySystem s;
    s.kind_ = SystemKind::PrimeLog;
    s.omegas_ = make_prefix(s.kind_, 0.0, {}, count);
    s.validate_prefix();
    return s;
}

FrequencySystem FrequencySystem::dispersion(double mass, int count) {
    if (!(mass > 0.0)) fail(ErrorCode::InvalidArgument, "dispersion mass must be positive");
    FrequencySystem s;
    s.kind_ = SystemKind::Dispersion;
    s.mass_ = mass;
    s.omegas_ = make_prefix(s.kind_, mass, {}, count);
    s.validate_prefix();
    return s;
}

FrequencySystem FrequencySystem::power_law(const PowerLawParams& p, int count) {
    if (!(p.A > 0.0)) fail(ErrorCode::InvalidArgument, "power law A must be positive");
    if (!(p.alpha >= 1.0)) fail(ErrorCode::InvalidArgument, "power law alpha must be >= 1");
    FrequencySystem s;
    s.kind_ = SystemKind::PowerLaw;
    s.pl_ = p;
    s.omegas_ = make_prefix(s.kind_, 0.0, p, count);
    s.validate_prefix();
    return s;
}

FrequencySystem FrequencySystem::explicit_list(std::vector<double> omegas) {
    FrequencySystem s;
    s.kind_ = SystemKind::Explicit;
    s.omegas_ = std::move(omegas);
    s.validate_prefix();
    return s;
}

void FrequencySystem::validate_prefix() const {
    if (omegas_.empty()) fail(ErrorCode::InvalidArgument, "frequency prefix is empty");
    double prev = 0.0;
    for (double w : omegas_) {
        if (!(w > 0.0))
            fail(ErrorCode::InvalidArgument, "frequencies must be strictly positive");
        if (!(w > prev))
            fail(ErrorCode::InvalidArgument, "frequencies must be strictly increasing");
        prev = w;
    }
}

FrequencySystem FrequencySystem::extended(int n) const {
    if (n <= count()) return *this;
    if (!extensible())
        fail(ErrorCode::PrefixTooShort, "explicit frequency list cannot be extended");
    FrequencySystem s = *this;
    s.omegas_ = make_prefix(kind_, mass_, pl_, n);
    s.validate_prefix();
    // prefix stability: the shared prefix must be unchanged
    for (int i = 0; i < count(); ++i)
        if (s.omegas_[static_cast<std::size_t>(i)] != omegas_[static_cast<std::size_t>(i)])
            fail(ErrorCode::Internal, "generator prefix not stable under extension");
    return s;
}

int FrequencySystem::modes_below(double bound) const {
    for (int i = 0; i < count(); ++i)
        if (omega(i) > bound) return i;
    if (!extensible())
        fail(ErrorCode::PrefixTooShort,
             "frequency prefix too short: last omega does not exceed requested bound");
    // generator kinds are unbounded; extend geometrically until covered
    FrequencySystem s = *this;
    while (s.omegas_.back() <= bound) {
        if (s.count() > 1'000'000)
            fail(ErrorCode::CapExceeded, "mode count cap exceeded while covering bound");
        s = s.extended(s.count() * 2);
    }
    for (int i = 0; i < s.count(); ++i)
        if (s.omega(i) > bound) return i;
    fail(ErrorCode::Internal, "unreachable");
}

AxiomReport FrequencySystem::check_axioms() const { return kron::check_axioms(omegas_, extensible()); }

AxiomReport check_axioms(const std::vector<double>& omegas, bool generator_backed) {
    AxiomReport r;
    if (omegas.empty()) {
        r.detail = "empty list";
        return r;
    }
    r.positivity = std::all_of(omegas.begin(), omegas.end(), [](double w) { return w > 0.0; });
    r.strictly_increasing = true;
    for (std::size_t i = 1; i < omegas.size(); ++i)
        if (!(omegas[i] > omegas[i - 1])) { r.strictly_increasing = false; break; }
    // On a finite prefix, divergence is witnessed by strict growth plus an
    // unbounded generator rule; an explicit list can only show growth.
    r.divergent_on_prefix =
        r.strictly_increasing && (generator_backed || omegas.back() > omegas.front());
    std::ostringstream os;
    os << "prefix=" << omegas.size() << " last=" << omegas.back();
    r.detail = os.str();
    return r;
}

std::string FrequencySystem::descriptor() const {
    std::ostringstream os;
    os.precision(17);
    switch (kind_) {
        case SystemKind::PrimeLog: os << "primelog"; break;
        case SystemKind::Dispersion: os << "dispersion:m=" << mass_; break;
        case SystemKind::PowerLaw:
            os << "powerlaw:A=" << pl_.A << ",alpha=" << pl_.alpha;
            if (pl_.mu != MuRule::Zero) os << ",mu=" << mu_name(pl_.mu) << ",c=" << pl_.c;
            break;
        case SystemKind::Explicit: {
            os << "explicit:";
            for (std::size_t i = 0; i < omegas_.size(); ++i)
                os << (i ? "," : "") << omegas_[i];
            break;
        }
    }
    return os.str();
}

FrequencySystem FrequencySystem::parse_descriptor(const std::string& text, int count) {
    std::string head = text, args;
    if (auto pos = text.find(':'); pos != std::string::npos) {
        head = text.substr(0, pos);
        args = text.substr(pos + 1);
    }
    auto parse_kv = [&args]() {
        std::vector<std::pair<std::string, std::string>> kv;
        std::stringstream ss(args);
        std::string item;
        while (std::getline(ss, item, ',')) {
            auto eq = item.find('=');
            if (eq == std::string::npos)
                fail(ErrorCode::InvalidArgument, "expected key=value in system descriptor: " + item);
            kv.emplace_back(item.substr(0, eq), item.substr(eq + 1));
        }
        return kv;
    };
    if (head == "primelog") return prime_log(count);
    if (head == "dispersion") {
        double m = 0.0;
        for (auto& [k, v] : parse_kv())
            if (k == "m" || k == "mass") m = std::stod(v);
            else fail(ErrorCode::InvalidArgument, "unknown dispersion parameter: " + k);
        return dispersion(m, count);
    }
    if (head == "powerlaw") {
        PowerLawParams p;
        for (auto& [k, v] : parse_kv()) {
            if (k == "A" || k == "a") p.A = std::stod(v);
            else if (k == "alpha") p.alpha = std::stod(v);
            else if (k == "mu") p.mu = mu_from_name(v);
            else if (k == "c") p.c = std::stod(v);
            else fail(ErrorCode::InvalidArgument, "unknown powerlaw parameter: " + k);
        }
        return power_law(p, count);
    }
    if (head == "explicit") {
        std::vector<double> w;
        std::stringstream ss(args);
        std::string item;
        while (std::getline(ss, item, ',')) w.push_back(std::stod(item));
        return explicit_list(std::move(w));
    }
    fail(ErrorCode::InvalidArgument, "unknown system kind: " + head);
}

std::string FrequencySystem::to_json() const {
    nlohmann::json j;
    switch (kind_) {
        case SystemKind::PrimeLog:
            j["kind"] = "primelog";
            j["params"] = nlohmann::json::object();
            break;
        case SystemKind::Dispersion:
            j["kind"] = "dispersion";
            j["params"] = {{"m", mass_}};
            break;
        case SystemKind::PowerLaw:
            j["kind"] = "powerlaw";
            j["params"] = {{"A", pl_.A}, {"alpha", pl_.alpha}, {"mu", mu_name(pl_.mu)}, {"c", pl_.c}};
            break;
        case SystemKind::Explicit:
            j["kind"] = "explicit";
            j["params"] = nlohmann::json::object();
            break;
    }
    j["omegas"] = omegas_;
    return j.dump();
}

FrequencySystem FrequencySystem::from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    const std::string kind = j.at("kind");
    const auto& params = j.at("params");
    const auto omegas = j.at("omegas").get<std::vector<double>>();
    const int count = static_cast<int>(omegas.size());
    FrequencySystem s = [&]() {
        if (kind == "primelog") return prime_log(count);
        if (kind == "dispersion") return dispersion(params.at("m").get<double>(), count);
        if (kind == "powerlaw") {
            PowerLawParams p;
            p.A = params.at("A").get<double>();
            p.alpha = params.at("alpha").get<double>();
            p.mu = mu_from_name(params.at("mu").get<std::string>());
            p.c = params.at("c").get<double>();
            return power_law(p, count);
        }
        if (kind == "explicit") return explicit_list(omegas);
        fail(ErrorCode::InvalidArgument, "unknown system kind in JSON: " + kind);
    }();
    // materialized omegas are authoritative for round-trip fidelity
    s.omegas_ = omegas;
    s.validate_prefix();
    return s;
}

} // namespace kron

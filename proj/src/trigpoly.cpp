#include "kronlab/trigpoly.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

#include "kronlab/error.hpp"

namespace kron {

FourierIndex FourierIndex::single(int mode, int n) {
    FourierIndex idx;
    if (n != 0) idx.entries_.emplace_back(mode, n);
    return idx;
}

FourierIndex FourierIndex::from_pairs(std::vector<std::pair<int, int>> entries) {
    std::sort(entries.begin(), entries.end());
    FourierIndex idx;
    for (auto& [mode, n] : entries) {
        if (mode < 0) fail(ErrorCode::InvalidArgument, "negative mode position");
        if (!idx.entries_.empty() && idx.entries_.back().first == mode)
            idx.entries_.back().second += n;
        else
            idx.entries_.emplace_back(mode, n);
    }
    std::erase_if(idx.entries_, [](const auto& e) { return e.second == 0; });
    return idx;
}

int FourierIndex::exponent(int mode) const {
    for (const auto& [m, n] : entries_)
        if (m == mode) return n;
    return 0;
}

double FourierIndex::value(const FrequencySystem& sys) const {
    double v = 0.0;
    for (const auto& [mode, n] : entries_) v += n * sys.omega(mode);
    return v;
}

FourierIndex FourierIndex::operator+(const FourierIndex& o) const {
    FourierIndex r;
    auto a = entries_.begin(), b = o.entries_.begin();
    while (a != entries_.end() || b != o.entries_.end()) {
        if (b == o.entries_.end() || (a != entries_.end() && a->first < b->first)) {
            r.entries_.push_back(*a++);
        } else if (a == entries_.end() || b->first < a->first) {
            r.entries_.push_back(*b++);
        } else {
            int n = a->second + b->second;
            if (n != 0) r.entries_.emplace_back(a->first, n);
            ++a; ++b;
        }
    }
    return r;
}

FourierIndex FourierIndex::operator-() const {
    FourierIndex r = *this;
    for (auto& [mode, n] : r.entries_) n = -n;
    return r;
}

TrigPolynomial TrigPolynomial::constant(std::shared_ptr<const FrequencySystem> sys, Complex c) {
    TrigPolynomial f(std::move(sys));
    f.set(FourierIndex{}, c);
    return f;
}

TrigPolynomial TrigPolynomial::mode_exp(std::shared_ptr<const FrequencySystem> sys, int mode, int n) {
    if (mode < 0 || mode >= sys->count())
        fail(ErrorCode::InvalidArgument, "mode position out of range");
    TrigPolynomial f(std::move(sys));
    f.set(FourierIndex::single(mode, n), 1.0);
    return f;
}

void TrigPolynomial::set(const FourierIndex& idx, Complex c) {
    if (std::abs(c) <= kPrune)
        terms_.erase(idx);
    else
        terms_[idx] = c;
}

Complex TrigPolynomial::coefficient(const FourierIndex& idx) const {
    auto it = terms_.find(idx);
    return it == terms_.end() ? Complex{0.0, 0.0} : it->second;
}

Complex TrigPolynomial::bohr_mean() const { return coefficient(FourierIndex{}); }

TrigPolynomial TrigPolynomial::multiply(const TrigPolynomial& g) const {
    if (sys_ != g.sys_)
        fail(ErrorCode::InvalidArgument, "cannot multiply polynomials over different systems");
    TrigPolynomial r(sys_);
    for (const auto& [ia, ca] : terms_)
        for (const auto& [ib, cb] : g.terms_)
            r.terms_[ia + ib] += ca * cb;
    r.prune();
    return r;
}

TrigPolynomial TrigPolynomial::add(const TrigPolynomial& g) const {
    if (sys_ != g.sys_)
        fail(ErrorCode::InvalidArgument, "cannot add polynomials over different systems");
    TrigPolynomial r = *this;
    for (const auto& [idx, c] : g.terms_) r.terms_[idx] += c;
    r.prune();
    return r;
}

TrigPolynomial TrigPolynomial::scale(Complex c) const {
    TrigPolynomial r(sys_);
    for (const auto& [idx, v] : terms_) r.terms_[idx] = c * v;
    r.prune();
    return r;
}

TrigPolynomial TrigPolynomial::conjugate() const {
    TrigPolynomial r(sys_);
    for (const auto& [idx, v] : terms_) r.terms_[-idx] = std::conj(v);
    return r;
}

TrigPolynomial TrigPolynomial::flow(double t) const {
    TrigPolynomial r(sys_);
    for (const auto& [idx, v] : terms_) {
        double eta = idx.value(*sys_);
        r.terms_[idx] = v * std::polar(1.0, t * eta);
    }
    return r;
}

Complex TrigPolynomial::evaluate(double x) const {
    Complex s = 0.0;
    for (const auto& [idx, v] : terms_) s += v * std::polar(1.0, idx.value(*sys_) * x);
    return s;
}

double TrigPolynomial::coeff_abs_sum() const {
    double s = 0.0;
    for (const auto& [idx, v] : terms_) s += std::abs(v);
    return s;
}

bool TrigPolynomial::is_hermitian(double tol) const {
    for (const auto& [idx, v] : terms_)
        if (std::abs(coefficient(-idx) - std::conj(v)) > tol) return false;
    return true;
}

void TrigPolynomial::prune() {
    std::erase_if(terms_, [](const auto& kv) { return std::abs(kv.second) <= kPrune; });
}

std::string TrigPolynomial::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [idx, c] : terms_) {
        nlohmann::json ji = nlohmann::json::object();
        for (const auto& [mode, n] : idx.entries()) ji[std::to_string(mode)] = n;
        arr.push_back({{"index", ji}, {"re", c.real()}, {"im", c.imag()}});
    }
    return arr.dump();
}

TrigPolynomial TrigPolynomial::from_json(std::shared_ptr<const FrequencySystem> sys,
                                         const std::string& text) {
    TrigPolynomial f(std::move(sys));
    nlohmann::json arr = nlohmann::json::parse(text);
    for (const auto& item : arr) {
        std::vector<std::pair<int, int>> pairs;
        for (auto it = item.at("index").begin(); it != item.at("index").end(); ++it)
            pairs.emplace_back(std::stoi(it.key()), it.value().get<int>());
        f.set(FourierIndex::from_pairs(std::move(pairs)),
              {item.at("re").get<double>(), item.at("im").get<double>()});
    }
    return f;
}

TrigPolynomial delta_truncated(std::shared_ptr<const FrequencySystem> sys, int K) {
    if (K < 1 || K > sys->count())
        fail(ErrorCode::InvalidArgument, "delta truncation K out of range");
    TrigPolynomial d(sys);
    for (int k = 0; k < K; ++k) {
        d.set(FourierIndex::single(k, +1), 1.0);
        d.set(FourierIndex::single(k, -1), 1.0);
    }
    return d;
}

} // namespace kron

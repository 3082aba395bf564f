#include "kronlab/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "kronlab/error.hpp"

namespace kron {

namespace {

std::vector<double> layout_modes(const FrequencySystem& sys, int k, bool doubled) {
    if (k < 1 || k > sys.count())
        fail(ErrorCode::InvalidArgument, "mode count out of range for system prefix");
    std::vector<double> w(sys.omegas().begin(), sys.omegas().begin() + k);
    if (doubled) w.insert(w.end(), w.begin(), w.end()); // Omega_- carries |omega|
    return w;
}

} // namespace

std::shared_ptr<const FockSpace> FockSpace::energy_cut(std::shared_ptr<const FrequencySystem> sys,
                                                       double e_max, Statistics stat, int modes,
                                                       bool doubled) {
    if (!(e_max >= 0.0)) fail(ErrorCode::InvalidArgument, "energy cut must be >= 0");
    auto sp = std::shared_ptr<FockSpace>(new FockSpace());
    sp->stat_ = stat;
    sp->trunc_ = Truncation::EnergyCut;
    sp->e_max_ = e_max;
    sp->doubled_ = doubled;
    if (modes < 0) {
        if (sys->extensible()) {
            modes = sys->modes_below(e_max);
            if (modes > sys->count())
                sys = std::make_shared<FrequencySystem>(sys->extended(modes));
        } else {
            modes = 0;
            while (modes < sys->count() && sys->omega(modes) <= e_max) ++modes;
        }
        if (modes == 0) modes = 1;
    }
    sp->sys_ = sys;
    sp->mode_omega_ = layout_modes(*sys, modes, doubled);

    // depth-first enumeration over the mode layout with budget pruning
    const int n_modes = static_cast<int>(sp->mode_omega_.size());
    Key key;
    key.b.assign(sp->has_bosons() ? n_modes : 0, 0);
    key.f.assign(sp->has_fermions() ? n_modes : 0, 0);
    const double slack = 1e-9 * std::max(1.0, e_max);
    std::vector<Key> basis;
    // run over combined (boson, fermion) occupancies mode by mode
    auto recurse = [&](auto&& self, int mode, double budget) -> void {
        if (mode < 0) {
            basis.push_back(key);
            if (basis.size() > 5'000'000)
                fail(ErrorCode::CapExceeded, "energy-cut basis exceeds 5e6 states");
            return;
        }
        const double w = sp->mode_omega_[static_cast<std::size_t>(mode)];
        const int fmax = sp->has_fermions() ? 1 : 0;
        for (int f = 0; f <= fmax; ++f) {
            double left = budget - f * w;
            if (left < 0.0) break;
            if (sp->has_fermions()) key.f[static_cast<std::size_t>(mode)] = static_cast<std::uint16_t>(f);
            if (sp->has_bosons()) {
                int n = 0;
                while (left >= 0.0) {
                    key.b[static_cast<std::size_t>(mode)] = static_cast<std::uint16_t>(n);
                    self(self, mode - 1, left);
                    left -= w;
                    ++n;
                    if (n > 65000) fail(ErrorCode::CapExceeded, "occupancy overflow");
                }
                key.b[static_cast<std::size_t>(mode)] = 0;
            } else {
                self(self, mode - 1, left);
            }
        }
        if (sp->has_fermions()) key.f[static_cast<std::size_t>(mode)] = 0;
    };
    recurse(recurse, n_modes - 1, e_max + slack);

    auto key_energy = [&](const Key& k) {
        double e = 0.0;
        for (std::size_t m = 0; m < k.b.size(); ++m) e += k.b[m] * sp->mode_omega_[m];
        for (std::size_t m = 0; m < k.f.size(); ++m) e += k.f[m] * sp->mode_omega_[m];
        return e;
    };
    std::stable_sort(basis.begin(), basis.end(), [&](const Key& a, const Key& b) {
        const double ea = key_energy(a), eb = key_energy(b);
        if (ea != eb) return ea < eb;
        return a < b;
    });
    sp->basis_ = std::move(basis);
    sp->build_index();
    return sp;
}

std::shared_ptr<const FockSpace> FockSpace::occupancy_cut(std::shared_ptr<const FrequencySystem> sys,
                                                          int modes, int cutoff, Statistics stat,
                                                          bool doubled) {
    if (cutoff < 1) fail(ErrorCode::InvalidArgument, "occupancy cutoff must be >= 1");
    auto sp = std::shared_ptr<FockSpace>(new FockSpace());
    sp->stat_ = stat;
    sp->trunc_ = Truncation::OccupancyCut;
    sp->cutoff_ = cutoff;
    sp->doubled_ = doubled;
    sp->sys_ = sys;
    sp->mode_omega_ = layout_modes(*sys, modes, doubled);

    const int n_modes = static_cast<int>(sp->mode_omega_.size());
    const std::size_t b_radix = sp->has_bosons() ? static_cast<std::size_t>(cutoff) + 1 : 1;
    const std::size_t f_radix = sp->has_fermions() ? 2 : 1;
    std::size_t dim = 1;
    for (int m = 0; m < n_modes; ++m) {
        dim *= b_radix * f_radix;
        if (dim > 50'000'000) fail(ErrorCode::CapExceeded, "occupancy-cut dimension cap exceeded");
    }
    // mixed-radix order, least significant mode first; vacuum at index 0
    sp->basis_.reserve(dim);
    Key key;
    key.b.assign(sp->has_bosons() ? n_modes : 0, 0);
    key.f.assign(sp->has_fermions() ? n_modes : 0, 0);
    for (std::size_t code = 0; code < dim; ++code) {
        std::size_t rest = code;
        for (int m = 0; m < n_modes; ++m) {
            if (sp->has_bosons()) {
                key.b[static_cast<std::size_t>(m)] = static_cast<std::uint16_t>(rest % b_radix);
                rest /= b_radix;
            }
            if (sp->has_fermions()) {
                key.f[static_cast<std::size_t>(m)] = static_cast<std::uint16_t>(rest % f_radix);
                rest /= f_radix;
            }
        }
        sp->basis_.push_back(key);
    }
    sp->build_index();
    return sp;
}

void FockSpace::build_index() {
    energies_.clear();
    energies_.reserve(basis_.size());
    index_.clear();
    for (std::size_t i = 0; i < basis_.size(); ++i) {
        const Key& k = basis_[i];
        double e = 0.0;
        for (std::size_t m = 0; m < k.b.size(); ++m) e += k.b[m] * mode_omega_[m];
        for (std::size_t m = 0; m < k.f.size(); ++m) e += k.f[m] * mode_omega_[m];
        energies_.push_back(e);
        index_[k] = static_cast<int>(i);
    }
}

int FockSpace::lookup(const Key& k) const {
    auto it = index_.find(k);
    return it == index_.end() ? -1 : it->second;
}

int FockSpace::boson_occ(int i, int mode) const {
    if (!has_bosons()) return 0;
    return basis_.at(static_cast<std::size_t>(i)).b.at(static_cast<std::size_t>(mode));
}

int FockSpace::fermion_occ(int i, int mode) const {
    if (!has_fermions()) return 0;
    return basis_.at(static_cast<std::size_t>(i)).f.at(static_cast<std::size_t>(mode));
}

int FockSpace::fermion_total(int i) const {
    if (!has_fermions()) return 0;
    int t = 0;
    for (auto c : basis_.at(static_cast<std::size_t>(i)).f) t += c;
    return t;
}

int FockSpace::boson_shifted(int i, int mode, int delta) const {
    if (!has_bosons()) fail(ErrorCode::InvalidArgument, "no bosonic modes in this space");
    Key k = basis_.at(static_cast<std::size_t>(i));
    const int n = k.b.at(static_cast<std::size_t>(mode)) + delta;
    if (n < 0) return -1;
    if (trunc_ == Truncation::OccupancyCut && n > cutoff_) return -1;
    k.b[static_cast<std::size_t>(mode)] = static_cast<std::uint16_t>(n);
    return lookup(k);
}

int FockSpace::fermion_flipped(int i, int mode) const {
    if (!has_fermions()) fail(ErrorCode::InvalidArgument, "no fermionic modes in this space");
    Key k = basis_.at(static_cast<std::size_t>(i));
    k.f[static_cast<std::size_t>(mode)] ^= 1;
    return lookup(k);
}

bool FockSpace::is_protected(int i, const std::vector<int>& modes, int margin) const {
    for (int m : modes) {
        if (!has_bosons()) continue;
        if (trunc_ == Truncation::OccupancyCut) {
            if (boson_occ(i, m) + margin > cutoff_) return false;
        } else {
            if (state_energy(i) + margin * mode_omega(m) >
                e_max_ + 1e-9 * std::max(1.0, e_max_))
                return false;
        }
    }
    return true;
}

std::vector<bool> FockSpace::protected_mask(const std::vector<int>& modes, int margin) const {
    std::vector<bool> mask(static_cast<std::size_t>(dimension()));
    for (int i = 0; i < dimension(); ++i) mask[static_cast<std::size_t>(i)] = is_protected(i, modes, margin);
    return mask;
}

// ---------------------------------------------------------------------------

SparseOperator SparseOperator::identity(std::shared_ptr<const FockSpace> space) {
    SparseOperator a(space);
    for (int i = 0; i < a.dimension(); ++i) a.add(i, i, 1.0);
    return a;
}

SparseOperator SparseOperator::diagonal(std::shared_ptr<const FockSpace> space,
                                        const std::vector<Complex>& d) {
    SparseOperator a(space);
    if (static_cast<int>(d.size()) != a.dimension())
        fail(ErrorCode::InvalidArgument, "diagonal length mismatch");
    for (int i = 0; i < a.dimension(); ++i) a.add(i, i, d[static_cast<std::size_t>(i)]);
    return a;
}

void SparseOperator::add(int row, int col, Complex v) {
    if (v == Complex{0.0, 0.0}) return;
    auto& r = rows_.at(static_cast<std::size_t>(row));
    auto it = r.find(col);
    if (it == r.end()) {
        r.emplace(col, v);
    } else {
        it->second += v;
        if (it->second == Complex{0.0, 0.0}) r.erase(it);
    }
}

Complex SparseOperator::entry(int row, int col) const {
    const auto& r = rows_.at(static_cast<std::size_t>(row));
    auto it = r.find(col);
    return it == r.end() ? Complex{0.0, 0.0} : it->second;
}

std::size_t SparseOperator::nonzeros() const {
    std::size_t n = 0;
    for (const auto& r : rows_) n += r.size();
    return n;
}

void SparseOperator::check_same_space(const SparseOperator& o) const {
    if (space_ != o.space_)
        fail(ErrorCode::InvalidArgument, "operators bound to different spaces");
}

SparseOperator SparseOperator::operator*(const SparseOperator& o) const {
    check_same_space(o);
    SparseOperator r(space_);
    for (int i = 0; i < dimension(); ++i) {
        auto& out = r.rows_[static_cast<std::size_t>(i)];
        for (const auto& [k, v] : rows_[static_cast<std::size_t>(i)])
            for (const auto& [j, w] : o.rows_[static_cast<std::size_t>(k)]) out[j] += v * w;
        std::erase_if(out, [](const auto& kv) { return kv.second == Complex{0.0, 0.0}; });
    }
    return r;
}

SparseOperator SparseOperator::operator+(const SparseOperator& o) const {
    check_same_space(o);
    SparseOperator r = *this;
    for (int i = 0; i < dimension(); ++i)
        for (const auto& [j, w] : o.rows_[static_cast<std::size_t>(i)]) r.add(i, j, w);
    return r;
}

SparseOperator SparseOperator::operator-(const SparseOperator& o) const {
    check_same_space(o);
    SparseOperator r = *this;
    for (int i = 0; i < dimension(); ++i)
        for (const auto& [j, w] : o.rows_[static_cast<std::size_t>(i)]) r.add(i, j, -w);
    return r;
}

SparseOperator SparseOperator::scaled(Complex c) const {
    SparseOperator r(space_);
    if (c == Complex{0.0, 0.0}) return r;
    for (int i = 0; i < dimension(); ++i)
        for (const auto& [j, w] : rows_[static_cast<std::size_t>(i)])
            r.rows_[static_cast<std::size_t>(i)][j] = c * w;
    return r;
}

SparseOperator SparseOperator::adjoint() const {
    SparseOperator r(space_);
    for (int i = 0; i < dimension(); ++i)
        for (const auto& [j, w] : rows_[static_cast<std::size_t>(i)])
            r.rows_[static_cast<std::size_t>(j)][i] = std::conj(w);
    return r;
}

SparseOperator SparseOperator::commutator(const SparseOperator& o) const {
    return (*this) * o - o * (*this);
}

SparseOperator SparseOperator::anticommutator(const SparseOperator& o) const {
    return (*this) * o + o * (*this);
}

Complex SparseOperator::diagonal_sum() const {
    Complex s = 0.0;
    for (int i = 0; i < dimension(); ++i) s += entry(i, i);
    return s;
}

double SparseOperator::max_abs() const {
    double m = 0.0;
    for (const auto& r : rows_)
        for (const auto& [j, w] : r) m = std::max(m, std::abs(w));
    return m;
}

double SparseOperator::column_defect(const SparseOperator& o, const std::vector<bool>& mask) const {
    check_same_space(o);
    // column sums of |this - o| restricted to protected columns
    std::vector<double> col(static_cast<std::size_t>(dimension()), 0.0);
    for (int i = 0; i < dimension(); ++i) {
        const auto& a = rows_[static_cast<std::size_t>(i)];
        const auto& b = o.rows_[static_cast<std::size_t>(i)];
        auto ia = a.begin();
        auto ib = b.begin();
        while (ia != a.end() || ib != b.end()) {
            if (ib == b.end() || (ia != a.end() && ia->first < ib->first)) {
                col[static_cast<std::size_t>(ia->first)] += std::abs(ia->second);
                ++ia;
            } else if (ia == a.end() || ib->first < ia->first) {
                col[static_cast<std::size_t>(ib->first)] += std::abs(ib->second);
                ++ib;
            } else {
                col[static_cast<std::size_t>(ia->first)] += std::abs(ia->second - ib->second);
                ++ia; ++ib;
            }
        }
    }
    double worst = 0.0;
    for (int j = 0; j < dimension(); ++j)
        if (mask.empty() || mask[static_cast<std::size_t>(j)])
            worst = std::max(worst, col[static_cast<std::size_t>(j)]);
    return worst;
}

double SparseOperator::column_defect(const SparseOperator& o) const {
    return column_defect(o, {});
}

std::string SparseOperator::dump_coordinates() const {
    std::ostringstream os;
    os.precision(17);
    os << "# basis " << dimension() << " states, modes";
    for (int m = 0; m < space_->mode_count(); ++m) os << ' ' << space_->mode_omega(m);
    os << '\n';
    for (int i = 0; i < dimension(); ++i) {
        os << "# state " << i;
        if (space_->has_bosons()) {
            os << " b=";
            for (int m = 0; m < space_->mode_count(); ++m) os << (m ? "," : "") << space_->boson_occ(i, m);
        }
        if (space_->has_fermions()) {
            os << " f=";
            for (int m = 0; m < space_->mode_count(); ++m) os << (m ? "," : "") << space_->fermion_occ(i, m);
        }
        os << '\n';
    }
    for (int i = 0; i < dimension(); ++i)
        for (const auto& [j, w] : rows_[static_cast<std::size_t>(i)])
            os << i << ' ' << j << ' ' << w.real() << ' ' << w.imag() << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------

SparseOperator shift_operator(std::shared_ptr<const FockSpace> space, int mode) {
    if (!space->has_bosons()) fail(ErrorCode::InvalidArgument, "shift needs a bosonic factor");
    if (mode < 0 || mode >= space->mode_count())
        fail(ErrorCode::InvalidArgument, "shift mode out of range");
    SparseOperator u(space);
    for (int i = 0; i < space->dimension(); ++i) {
        const int j = space->boson_shifted(i, mode, +1);
        if (j >= 0) u.add(j, i, 1.0);
    }
    return u;
}

std::pair<SparseOperator, SparseOperator> boson_ops(std::shared_ptr<const FockSpace> space,
                                                    int mode) {
    if (!space->has_bosons()) fail(ErrorCode::InvalidArgument, "no bosonic modes in this space");
    if (mode < 0 || mode >= space->mode_count())
        fail(ErrorCode::InvalidArgument, "mode out of range");
    SparseOperator create(space);
    for (int i = 0; i < space->dimension(); ++i) {
        const int j = space->boson_shifted(i, mode, +1);
        if (j >= 0) create.add(j, i, std::sqrt(space->boson_occ(i, mode) + 1.0));
    }
    return {create.adjoint(), create};
}

std::pair<SparseOperator, SparseOperator> fermion_ops(std::shared_ptr<const FockSpace> space,
                                                      int mode) {
    if (!space->has_fermions()) fail(ErrorCode::InvalidArgument, "no fermionic modes in this space");
    if (mode < 0 || mode >= space->mode_count())
        fail(ErrorCode::InvalidArgument, "mode out of range");
    SparseOperator create(space);
    for (int i = 0; i < space->dimension(); ++i) {
        if (space->fermion_occ(i, mode) != 0) continue;
        int string = 0;
        for (int m = 0; m < mode; ++m) string += space->fermion_occ(i, m);
        const int j = space->fermion_flipped(i, mode);
        if (j >= 0) create.add(j, i, string % 2 == 0 ? 1.0 : -1.0);
    }
    return {create.adjoint(), create};
}

SparseOperator toeplitz_operator(std::shared_ptr<const FockSpace> space, const TrigPolynomial& f) {
    if (space->statistics() != Statistics::Boson || space->truncation() != Truncation::EnergyCut)
        fail(ErrorCode::InvalidArgument, "Toeplitz operators live on the bosonic energy cut");
    SparseOperator t(space);
    for (const auto& [idx, coeff] : f.terms()) {
        if (idx.max_mode() >= space->mode_count())
            fail(ErrorCode::InvalidArgument, "polynomial uses modes beyond this space");
        for (int i = 0; i < space->dimension(); ++i) {
            int j = i;
            // lowerings first: intermediate energies stay minimal, so a term
            // survives iff lowerings are valid and the final state is in basis
            for (const auto& [mode, n] : idx.entries())
                if (n < 0 && j >= 0) j = space->boson_shifted(j, mode, n);
            for (const auto& [mode, n] : idx.entries())
                if (n > 0 && j >= 0) j = space->boson_shifted(j, mode, n);
            if (j >= 0) t.add(j, i, coeff);
        }
    }
    return t;
}

SparseOperator hamiltonian(std::shared_ptr<const FockSpace> space) {
    SparseOperator h(space);
    for (int i = 0; i < space->dimension(); ++i) h.add(i, i, space->state_energy(i));
    return h;
}

SparseOperator number_operator(std::shared_ptr<const FockSpace> space) {
    SparseOperator f(space);
    for (int i = 0; i < space->dimension(); ++i)
        f.add(i, i, static_cast<double>(space->fermion_total(i)));
    return f;
}

SparseOperator grading_operator(std::shared_ptr<const FockSpace> space) {
    SparseOperator g(space);
    for (int i = 0; i < space->dimension(); ++i) g.add(i, i, space->parity(i));
    return g;
}

SparseOperator evolution_operator(std::shared_ptr<const FockSpace> space, double t) {
    SparseOperator u(space);
    for (int i = 0; i < space->dimension(); ++i)
        u.add(i, i, std::polar(1.0, t * space->state_energy(i)));
    return u;
}

std::pair<SparseOperator, SparseOperator> field_ops(std::shared_ptr<const FockSpace> space,
                                                    double x, double t, int K) {
    if (!space->doubled())
        fail(ErrorCode::InvalidArgument, "field operators need the doubled mode layout");
    const int half = space->mode_count() / 2;
    if (K < 1 || K > half) fail(ErrorCode::InvalidArgument, "field mode count out of range");
    SparseOperator phi(space), pi(space);
    const Complex i_unit{0.0, 1.0};
    for (int k = 0; k < K; ++k) {
        const double w = space->mode_omega(k);
        // mode positions: +omega_k at k, -omega_k at half + k
        for (int sign = 0; sign < 2; ++sign) {
            const int m_plus = sign == 0 ? k : half + k;   // index of a*_w
            const int m_minus = sign == 0 ? half + k : k;  // index of a_{-w}
            const double freq = sign == 0 ? w : -w;        // spatial frequency
            auto [a_minus, astar_minus] = boson_ops(space, m_minus);
            auto [a_plus, astar_plus] = boson_ops(space, m_plus);
            (void)a_plus; (void)astar_minus;
            const Complex space_phase = std::polar(1.0, freq * x);
            const Complex up = std::polar(1.0, t * w);   // e^{it|w|}
            const Complex dn = std::conj(up);
            const double root = std::sqrt(0.5 / w);
            phi = phi + astar_plus.scaled(root * up * space_phase) +
                  a_minus.scaled(root * dn * space_phase);
            const double rootw = std::sqrt(0.5 * w);
            pi = pi + astar_plus.scaled(i_unit * rootw * up * space_phase) -
                 a_minus.scaled(i_unit * rootw * dn * space_phase);
        }
    }
    return {phi, pi};
}

std::pair<SparseOperator, SparseOperator> fermi_fields(std::shared_ptr<const FockSpace> space,
                                                       double x, int K) {
    if (!space->doubled())
        fail(ErrorCode::InvalidArgument, "fermi fields need the doubled mode layout");
    if (!space->has_fermions()) fail(ErrorCode::InvalidArgument, "no fermionic modes");
    const int half = space->mode_count() / 2;
    if (K < 1 || K > half) fail(ErrorCode::InvalidArgument, "field mode count out of range");
    SparseOperator psi1(space), psi2(space);
    const Complex i_unit{0.0, 1.0};
    for (int k = 0; k < K; ++k) {
        for (int sign = 0; sign < 2; ++sign) {
            const int m_plus = sign == 0 ? k : half + k;
            const int m_minus = sign == 0 ? half + k : k;
            const double freq = sign == 0 ? space->mode_omega(k) : -space->mode_omega(k);
            auto [b_minus, bstar_minus] = fermion_ops(space, m_minus);
            auto [b_plus, bstar_plus] = fermion_ops(space, m_plus);
            (void)b_plus; (void)bstar_minus;
            const Complex ph = std::polar(1.0, -freq * x);
            psi1 = psi1 + bstar_plus.scaled(ph) + b_minus.scaled(ph);
            psi2 = psi2 + bstar_plus.scaled(i_unit * ph) - b_minus.scaled(i_unit * ph);
        }
    }
    return {psi1, psi2};
}

SparseOperator supercharge(std::shared_ptr<const FockSpace> space, int K) {
    if (space->statistics() != Statistics::GradedProduct)
        fail(ErrorCode::InvalidArgument, "supercharge needs the graded product space");
    if (K < 0) K = space->mode_count();
    if (K > space->mode_count()) fail(ErrorCode::InvalidArgument, "mode count out of range");
    SparseOperator q(space);
    for (int m = 0; m < K; ++m) {
        const double root = std::sqrt(space->mode_omega(m));
        auto [a, astar] = boson_ops(space, m);
        auto [b, bstar] = fermion_ops(space, m);
        q = q + (astar * b).scaled(root) + (a * bstar).scaled(root);
    }
    return q;
}

SparseOperator time_average(const SparseOperator& a, double M) {
    if (!(M > 0.0)) fail(ErrorCode::InvalidArgument, "averaging window must be positive");
    const auto& space = a.space();
    SparseOperator r(space);
    for (int i = 0; i < a.dimension(); ++i) {
        for (const auto& [j, w] : a.row(i)) {
            const double gap = space->state_energy(i) - space->state_energy(j);
            if (gap == 0.0) {
                r.add(i, j, w);
            } else {
                const Complex factor =
                    (std::polar(1.0, M * gap) - 1.0) / Complex{0.0, M * gap};
                r.add(i, j, w * factor);
            }
        }
    }
    return r;
}

} // namespace kron

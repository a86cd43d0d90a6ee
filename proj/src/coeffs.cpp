#include "rabisym/coeffs.hpp"

#include <Eigen/SVD>

#include "rabisym/model.hpp"
#include "rabisym/symmetry.hpp"

namespace rabisym
{

char elem_name(Elem e)
{
    switch (e)
    {
        case Elem::A: return 'A';
        case Elem::B: return 'B';
        case Elem::C: return 'C';
        default: return 'D';
    }
}

Elem elem_from_name(char c)
{
    switch (c)
    {
        case 'A': return Elem::A;
        case 'B': return Elem::B;
        case 'C': return Elem::C;
        case 'D': return Elem::D;
        default: throw InvalidParams("unknown element name");
    }
}

double CoeffTable::get(Elem e, int n, int m) const
{
    auto it = entries.find({e, n, m});
    return it == entries.end() ? 0.0 : it->second;
}

void CoeffTable::set(Elem e, int n, int m, double value)
{
    entries[{e, n, m}] = value;
}

double CoeffTable::max_abs() const
{
    double v = 0.0;
    for (const auto& [key, value] : entries)
        v = std::max(v, std::abs(value));
    return v;
}

double CoeffTable::max_abs_diff(const CoeffTable& other) const
{
    double v = 0.0;
    for (const auto& [key, value] : entries)
        v = std::max(v, std::abs(value - other.get(std::get<0>(key), std::get<1>(key),
                                                   std::get<2>(key))));
    for (const auto& [key, value] : other.entries)
        v = std::max(v, std::abs(value - get(std::get<0>(key), std::get<1>(key),
                                             std::get<2>(key))));
    return v;
}

namespace
{

// sign relating M_{n,m} to M_{m,n} under self-adjointness of J.
// The (n-m)/2 exponent (rather than (n+m)/2) is what the explicit
// N = 3 solution satisfies; the two agree whenever n and m are even.
double herm_sign(int n, int m)
{
    return ((n - m) / 2) % 2 == 0 ? 1.0 : -1.0;
}

} // namespace

double CoeffTable::hermiticity_violation() const
{
    const auto lattice = coeff_lattice(2 * n_bias);
    double worst = 0.0;
    for (const auto& [n, m] : lattice)
    {
        const double s = herm_sign(n, m);
        worst = std::max(worst, std::abs(get(Elem::A, n, m) - s * get(Elem::A, m, n)));
        worst = std::max(worst, std::abs(get(Elem::D, n, m) - s * get(Elem::D, m, n)));
        worst = std::max(worst, std::abs(get(Elem::C, m, n) - s * get(Elem::B, n, m)));
    }
    return worst;
}

std::vector<std::pair<int, int>> coeff_lattice(int max_sum)
{
    std::vector<std::pair<int, int>> pts;
    for (int s = 0; s <= max_sum; s += 2)
        for (int n = 0; n <= s; ++n)
            pts.emplace_back(n, s - n);
    return pts;
}

CoeffTable closed_form_coeffs(int n_bias, const ModelParams& params)
{
    params.validate();
    const double d = params.delta;
    const double g = params.g;
    const double b = params.beta();

    CoeffTable t;
    t.n_bias = n_bias;
    switch (n_bias)
    {
        case 0:
            t.set(Elem::B, 0, 0, 1.0);
            t.set(Elem::C, 0, 0, 1.0);
            break;
        case 1:
            t.set(Elem::B, 0, 2, 1.0);
            t.set(Elem::C, 2, 0, -1.0);
            t.set(Elem::A, 0, 0, d / (8 * g * b));
            t.set(Elem::D, 0, 0, d / (8 * g * b));
            break;
        case 2:
            t.set(Elem::B, 0, 4, 1.0);
            t.set(Elem::B, 0, 0, d * d / (64 * g * g * b * b));
            t.set(Elem::C, 4, 0, 1.0);
            t.set(Elem::C, 0, 0, d * d / (64 * g * g * b * b));
            t.set(Elem::A, 0, 2, d / (8 * g * b));
            t.set(Elem::A, 2, 0, -d / (8 * g * b));
            t.set(Elem::A, 0, 0, -d / (16 * g * g * b));
            t.set(Elem::D, 0, 2, d / (8 * g * b));
            t.set(Elem::D, 2, 0, -d / (8 * g * b));
            t.set(Elem::D, 0, 0, d / (16 * g * g * b));
            break;
        case 3:
            t.set(Elem::B, 0, 6, 1.0);
            t.set(Elem::B, 0, 2, d * d / (32 * g * g * b * b));
            t.set(Elem::B, 2, 0, -d * d / (64 * g * g * b * b));
            t.set(Elem::C, 6, 0, -1.0);
            t.set(Elem::C, 2, 0, -d * d / (32 * g * g * b * b));
            t.set(Elem::C, 0, 2, d * d / (64 * g * g * b * b));
            t.set(Elem::A, 0, 4, d / (8 * g * b));
            t.set(Elem::A, 4, 0, d / (8 * g * b));
            t.set(Elem::A, 2, 2, -d / (8 * g * b));
            t.set(Elem::A, 2, 0, d / (8 * g * g * b));
            t.set(Elem::A, 0, 2, -d / (8 * g * g * b));
            t.set(Elem::A, 1, 1, -d / (4 * g * b * b));
            t.set(Elem::A, 0, 0,
                  d / (16 * g * g * g * b) + d * d * d / (512 * g * g * g * b * b * b) -
                      d / (16 * g * b * b * b));
            t.set(Elem::D, 0, 4, d / (8 * g * b));
            t.set(Elem::D, 4, 0, d / (8 * g * b));
            t.set(Elem::D, 2, 2, -d / (8 * g * b));
            t.set(Elem::D, 2, 0, -d / (8 * g * g * b));
            t.set(Elem::D, 0, 2, d / (8 * g * g * b));
            t.set(Elem::D, 0, 0,
                  d / (16 * g * g * g * b) + d * d * d / (512 * g * g * g * b * b * b));
            break;
        default:
            throw UnsupportedBias("closed forms available for N = 0..3 only");
    }
    return t;
}

namespace
{

class RecurrenceSystem
{
public:
    RecurrenceSystem(int n_bias, const ModelParams& params) : n_(n_bias)
    {
        lattice_ = coeff_lattice(2 * n_bias);
        int idx = 0;
        for (Elem e : all_elems)
            for (const auto& [n, m] : lattice_)
                index_[{e, n, m}] = idx++;
        n_vars_ = idx;

        const double d = params.delta;
        const double g = params.g;
        const double b = params.beta();

        // equation indices for r1/r2 run one tier above the lattice;
        // the extra tier is what makes A_{n,2N-n} = D_{n,2N-n} = 0
        // fall out instead of being imposed
        const auto eq_lattice = coeff_lattice(2 * n_bias + 2);

        for (const auto& [n, m] : eq_lattice)
        {
            // r1: row for A at (n,m)
            begin_row();
            add(Elem::A, n - 2, m, 1.0);
            add(Elem::A, n, m - 2, 1.0);
            add(Elem::A, n - 1, m + 1, (m + 1) / b);
            add(Elem::A, n, m, (m - n) / (4.0 * g));
            add(Elem::A, n + 1, m - 1, (n + 1) / b);
            add(Elem::A, n, m + 2, (m + 1) * (m + 2) / (4.0 * b * b));
            add(Elem::A, n + 2, m, (n + 1) * (n + 2) / (4.0 * b * b));
            add(Elem::B, n, m, -d / (8.0 * g * b));
            add(Elem::C, n, m, d / (8.0 * g * b));
            end_row();

            // r2: row for D at (n,m)
            begin_row();
            add(Elem::D, n - 2, m, 1.0);
            add(Elem::D, n, m - 2, 1.0);
            add(Elem::D, n, m, (n - m) / (4.0 * g));
            add(Elem::B, n, m, -d / (8.0 * g * b));
            add(Elem::C, n, m, d / (8.0 * g * b));
            end_row();
        }

        for (const auto& [n, m] : lattice_)
        {
            // r3: row for B at (n,m)
            begin_row();
            add(Elem::B, n, m, 0.5 * (m - n) - n_);
            add(Elem::B, n + 1, m - 1, 2.0 * g * (n + 1) / b);
            add(Elem::B, n + 2, m, 0.5 * g * (n + 1) * (n + 2) / (b * b));
            add(Elem::A, n, m, -d / (4.0 * b));
            add(Elem::D, n, m, d / (4.0 * b));
            end_row();

            // r4: row for C at (n,m)
            begin_row();
            add(Elem::C, n, m, 0.5 * (n - m) - n_);
            add(Elem::C, n - 1, m + 1, -2.0 * g * (m + 1) / b);
            add(Elem::C, n, m + 2, -0.5 * g * (m + 1) * (m + 2) / (b * b));
            add(Elem::A, n, m, -d / (4.0 * b));
            add(Elem::D, n, m, d / (4.0 * b));
            end_row();

            // self-adjointness ties C to B and pins the symmetric
            // parts of A and D
            const double s = herm_sign(n, m);
            begin_row();
            add(Elem::C, m, n, 1.0);
            add(Elem::B, n, m, -s);
            end_row();
            if (n < m || (n == m && s < 0))
            {
                begin_row();
                add(Elem::A, n, m, 1.0);
                add(Elem::A, m, n, -s);
                end_row();
                begin_row();
                add(Elem::D, n, m, 1.0);
                add(Elem::D, m, n, -s);
                end_row();
            }
        }
    }

    Eigen::MatrixXd homogeneous() const
    {
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(static_cast<int>(rows_.size()), n_vars_);
        for (int r = 0; r < static_cast<int>(rows_.size()); ++r)
            for (const auto& [c, v] : rows_[r])
                a(r, c) += v;
        return a;
    }

    int variable(Elem e, int n, int m) const { return index_.at({e, n, m}); }
    int n_vars() const { return n_vars_; }
    const std::vector<std::pair<int, int>>& lattice() const { return lattice_; }

private:
    void begin_row() { current_.clear(); }
    void end_row()
    {
        if (!current_.empty())
            rows_.push_back(current_);
    }
    void add(Elem e, int n, int m, double v)
    {
        if (n < 0 || m < 0 || n + m > 2 * n_ || v == 0.0)
            return; // out-of-lattice coefficients are zero
        current_.emplace_back(index_.at({e, n, m}), v);
    }

    int n_;
    int n_vars_ = 0;
    std::vector<std::pair<int, int>> lattice_;
    std::map<std::tuple<Elem, int, int>, int> index_;
    std::vector<std::pair<int, double>> current_;
    std::vector<std::vector<std::pair<int, double>>> rows_;
};

CoeffTable table_from_vector(int n_bias, const RecurrenceSystem& sys, const Eigen::VectorXd& x)
{
    CoeffTable t;
    t.n_bias = n_bias;
    for (Elem e : all_elems)
        for (const auto& [n, m] : sys.lattice())
        {
            const double v = x(sys.variable(e, n, m));
            if (v != 0.0)
                t.set(e, n, m, v);
        }
    return t;
}

} // namespace

CoeffTable solve_recurrence(int n_bias, const ModelParams& params)
{
    params.validate();
    if (n_bias < 0)
        throw InvalidParams("bias index must be non-negative");

    RecurrenceSystem sys(n_bias, params);
    Eigen::MatrixXd a = sys.homogeneous();

    // stack the normalization B_{0,2N} = 1 below the homogeneous rows
    const int rows = static_cast<int>(a.rows());
    Eigen::MatrixXd full(rows + 1, sys.n_vars());
    full.topRows(rows) = a;
    full.bottomRows(1).setZero();
    full(rows, sys.variable(Elem::B, 0, 2 * n_bias)) = 1.0;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows + 1);
    rhs(rows) = 1.0;

    Eigen::BDCSVD<Eigen::MatrixXd> svd(full, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd x = svd.solve(rhs);
    const double residual = (full * x - rhs).norm() / rhs.norm();
    if (residual > 1e-8)
        throw NoSolution("recurrence system residual " + std::to_string(residual));

    // nullity of the homogeneous system alone; > 1 means the
    // normalization leaves a gauge freedom (minimum-norm solution
    // returned, flagged on the table)
    Eigen::BDCSVD<Eigen::MatrixXd> hsvd(a);
    const Eigen::VectorXd& sv = hsvd.singularValues();
    const double smax = sv.size() ? sv(0) : 0.0;
    int nullity = sys.n_vars() - static_cast<int>(sv.size());
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) <= 1e-10 * smax)
            ++nullity;

    CoeffTable t = table_from_vector(n_bias, sys, x);
    t.residual = residual;
    t.nullity = std::max(1, nullity);
    return t;
}

CoeffTable nullspace_symmetry(int n_bias, const ModelParams& params, Sector sector, int states)
{
    params.validate();
    const FockBasis basis{sector, states};
    const int full = basis.full_cutoff();
    const auto lattice = coeff_lattice(2 * n_bias);
    const int terms = static_cast<int>(lattice.size());

    const HamiltonianSet ham = build_h0(params, sector, states);

    // sector-projected monomial basis 2^{-(n+m)/2} (a_+^dag)^n (a_-)^m
    auto [a_plus, a_minus] = bogoliubov_pair(params, full);
    std::vector<Eigen::MatrixXd> up_pow(2 * n_bias + 1), dn_pow(2 * n_bias + 1);
    up_pow[0] = dn_pow[0] = Eigen::MatrixXd::Identity(full, full);
    for (int k = 1; k <= 2 * n_bias; ++k)
    {
        up_pow[k] = a_plus.mat.transpose() * up_pow[k - 1];
        dn_pow[k] = dn_pow[k - 1] * a_minus.mat;
    }
    std::vector<Eigen::MatrixXd> mono(terms);
    for (int t = 0; t < terms; ++t)
    {
        const auto [n, m] = lattice[t];
        BosonOp op{std::pow(2.0, -0.5 * (n + m)) * (up_pow[n] * dn_pow[m]), std::nullopt};
        mono[t] = project_sector(op, sector).mat;
    }

    const int margin = 2 * n_bias + 2 + 2;
    const int window = window_states(BosonOp{mono[0], basis}, margin);
    if (window < 2)
        throw InvalidParams("cutoff too small for the requested bias index");

    // residual of Q H0 - H~ Q is linear in the coefficients; one column
    // per (element, n, m)
    const int n_vars = 4 * terms;
    const int rows_per = window * window;
    Eigen::MatrixXd map(4 * rows_per, n_vars);
    const int m_dim = states;
    auto h = [&](int i, int j) { return ham.h0.block(i, j); };
    auto ht = [&](int i, int j) { return ham.h_tilde.block(i, j); };
    for (int t = 0; t < terms; ++t)
    {
        const Eigen::MatrixXd& mo = mono[t];
        // residual blocks, element placement (A B; C D):
        // R11 = A H11 + B H21 - Ht11 A - Ht12 C
        // R12 = A H12 + B H22 - Ht11 B - Ht12 D
        // R21 = C H11 + D H21 - Ht21 A - Ht22 C
        // R22 = C H12 + D H22 - Ht21 B - Ht22 D
        struct Contribution
        {
            int elem;
            int res_block;
            Eigen::MatrixXd value;
        };
        std::vector<Contribution> contribs;
        contribs.push_back({0, 0, mo * h(0, 0) - ht(0, 0) * mo}); // A in R11
        contribs.push_back({0, 1, mo * h(0, 1)});                 // A in R12
        contribs.push_back({0, 2, -(ht(1, 0) * mo)});             // A in R21
        contribs.push_back({1, 0, mo * h(1, 0)});                 // B in R11
        contribs.push_back({1, 1, mo * h(1, 1) - ht(0, 0) * mo}); // B in R12
        contribs.push_back({1, 3, -(ht(1, 0) * mo)});             // B in R22
        contribs.push_back({2, 0, -(ht(0, 1) * mo)});             // C in R11
        contribs.push_back({2, 2, mo * h(0, 0) - ht(1, 1) * mo}); // C in R21
        contribs.push_back({2, 3, mo * h(0, 1)});                 // C in R22
        contribs.push_back({3, 1, -(ht(0, 1) * mo)});             // D in R12
        contribs.push_back({3, 2, mo * h(1, 0)});                 // D in R21
        contribs.push_back({3, 3, mo * h(1, 1) - ht(1, 1) * mo}); // D in R22

        std::array<Eigen::MatrixXd, 16> acc;
        for (auto& mrow : acc)
            mrow = Eigen::MatrixXd::Zero(m_dim, m_dim);
        for (const auto& c : contribs)
            acc[c.elem * 4 + c.res_block] += c.value;

        for (int e = 0; e < 4; ++e)
        {
            const int col = e * terms + t;
            for (int rb = 0; rb < 4; ++rb)
            {
                const Eigen::MatrixXd win = acc[e * 4 + rb].topLeftCorner(window, window);
                map.block(rb * rows_per, col, rows_per, 1) =
                    Eigen::Map<const Eigen::VectorXd>(win.data(), rows_per);
            }
        }
    }

    // balance the wildly different column scales before the SVD
    Eigen::VectorXd scale(n_vars);
    for (int c = 0; c < n_vars; ++c)
    {
        scale(c) = map.col(c).norm();
        if (scale(c) == 0.0)
            scale(c) = 1.0;
        map.col(c) /= scale(c);
    }

    Eigen::BDCSVD<Eigen::MatrixXd> svd(map, Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double smax = sv(0);
    const double smin = sv(sv.size() - 1);
    if (smin > 1e-8 * smax)
        throw EmptyNullspace("no symmetry operator at these parameters (sigma_min/sigma_max = " +
                             std::to_string(smin / smax) + ")");

    int nullity = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv(i) <= 1e-8 * smax)
            ++nullity;

    Eigen::VectorXd x = svd.matrixV().col(sv.size() - 1);
    x = x.cwiseQuotient(scale);

    // normalization B_{0,2N} = 1
    int norm_idx = -1;
    for (int t = 0; t < terms; ++t)
        if (lattice[t] == std::pair<int, int>{0, 2 * n_bias})
            norm_idx = terms + t;
    const double pivot = x(norm_idx);
    if (std::abs(pivot) < 1e-12 * x.cwiseAbs().maxCoeff())
        throw NoSolution("nullspace vector has vanishing B_{0,2N}; cannot normalize");
    x /= pivot;

    CoeffTable t;
    t.n_bias = n_bias;
    t.residual = smin / smax;
    t.nullity = std::max(1, nullity);
    for (int e = 0; e < 4; ++e)
        for (int k = 0; k < terms; ++k)
        {
            const double v = x(e * terms + k);
            if (std::abs(v) > 1e-12)
                t.set(all_elems[static_cast<size_t>(e)], lattice[k].first, lattice[k].second, v);
        }
    return t;
}

} // namespace rabisym

#include "sqz/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "sqz/evolution.hpp"
#include "sqz/pair_state.hpp"

namespace sqz::oracle {

namespace {

using Complex = std::complex<double>;

void check_state_capacity(int n) {
    if (n < 2) throw std::invalid_argument("oracle: spin count must be >= 2");
    if (n > kMaxStateQubits) {
        throw std::invalid_argument("oracle: n=" + std::to_string(n) +
                                    " exceeds the state-vector capacity (max " +
                                    std::to_string(kMaxStateQubits) + ")");
    }
}

void check_density_capacity(int n) {
    if (n < 2) throw std::invalid_argument("oracle: spin count must be >= 2");
    if (n > kMaxDensityQubits) {
        throw std::invalid_argument("oracle: n=" + std::to_string(n) +
                                    " exceeds the density-operator capacity (max " +
                                    std::to_string(kMaxDensityQubits) + ")");
    }
}

// In-place orthonormal Walsh-Hadamard transform over all qubits.
void walsh_hadamard(StateVector& v, int n) {
    const long dim = v.size();
    for (int q = 0; q < n; ++q) {
        const long h = 1L << q;
        for (long i = 0; i < dim; i += 2 * h) {
            for (long j = i; j < i + h; ++j) {
                const Complex a = v(j);
                const Complex b = v(j + h);
                v(j) = a + b;
                v(j + h) = a - b;
            }
        }
    }
    v /= std::sqrt(static_cast<double>(dim));
}

double binom(int n, int k) {
    double acc = 1.0;
    for (int i = 1; i <= k; ++i) acc = acc * (n - k + i) / i;
    return acc;
}

}  // namespace

StateVector twisted_state(int n, double theta0) {
    check_state_capacity(n);
    const long dim = 1L << n;
    StateVector psi = StateVector::Zero(dim);
    psi(dim - 1) = 1.0;  // |1>^n, all qubits in the ground state

    // Jx = H^n Jz H^n, so the twist is a diagonal phase in the rotated frame,
    // with Jz eigenvalue m = (n - 2*popcount)/2 on basis index i.
    walsh_hadamard(psi, n);
    for (long i = 0; i < dim; ++i) {
        const double m = 0.5 * (n - 2 * std::popcount(static_cast<unsigned long>(i)));
        psi(i) *= std::exp(Complex(0.0, -theta0 * m * m / 2.0));
    }
    walsh_hadamard(psi, n);
    return psi;
}

StateVector twisted_state_dicke(int n, double theta0) {
    check_state_capacity(n);

    // Jx on the spin-n/2 sector, basis |k> = k excitations, m = k - n/2.
    Eigen::MatrixXd jx = Eigen::MatrixXd::Zero(n + 1, n + 1);
    const double j = n / 2.0;
    for (int k = 0; k + 1 <= n; ++k) {
        const double m = k - j;
        const double amp = 0.5 * std::sqrt(j * (j + 1.0) - m * (m + 1.0));
        jx(k + 1, k) = amp;
        jx(k, k + 1) = amp;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(jx);
    const Eigen::MatrixXd& vecs = es.eigenvectors();
    const Eigen::VectorXd& vals = es.eigenvalues();

    // exp(-i theta0 Jx^2/2) applied to |k=0>.
    Eigen::VectorXcd coef = Eigen::VectorXcd::Zero(n + 1);
    for (int a = 0; a <= n; ++a) {
        const Complex phase = std::exp(Complex(0.0, -theta0 * vals(a) * vals(a) / 2.0));
        for (int k = 0; k <= n; ++k) coef(k) += vecs(k, a) * phase * vecs(0, a);
    }

    // Lift the Dicke coefficients: a basis string with e excited qubits
    // carries amplitude coef(e)/sqrt(C(n,e)).
    const long dim = 1L << n;
    StateVector psi(dim);
    for (long i = 0; i < dim; ++i) {
        const int excited = n - std::popcount(static_cast<unsigned long>(i));
        psi(i) = coef(excited) / std::sqrt(binom(n, excited));
    }
    return psi;
}

DensityOperator density_from_state(const StateVector& psi) {
    const double norm = psi.norm();
    if (std::abs(norm - 1.0) > 1e-12) {
        throw std::domain_error("density_from_state: state vector is not normalized");
    }
    return psi * psi.adjoint();
}

bool is_density_operator(const DensityOperator& rho, double tol) {
    if (rho.rows() != rho.cols()) return false;
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol) return false;
    Eigen::SelfAdjointEigenSolver<DensityOperator> es(rho, Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -1e-10;
}

DensityOperator product_channel(const ChannelSpec& spec, const DensityOperator& rho) {
    const long dim = rho.rows();
    const int n = std::countr_zero(static_cast<unsigned long>(dim));
    if (dim != rho.cols() || dim != (1L << n)) {
        throw std::invalid_argument("product_channel: matrix is not 2^n x 2^n");
    }
    check_density_capacity(n);
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10 ||
        std::abs(rho.trace() - Complex(1.0, 0.0)) > 1e-10) {
        throw std::domain_error("product_channel: input is not a density operator");
    }

    const auto ks = kraus_set(spec);
    DensityOperator cur = rho;
    DensityOperator acc(dim, dim);
    DensityOperator tmp(dim, dim);
    for (int q = 0; q < n; ++q) {
        const long bit = 1L << q;
        acc.setZero();
        for (const auto& e : ks) {
            // rows: tmp = E_q * cur
            for (long i = 0; i < dim; ++i) {
                if (i & bit) continue;
                const long i1 = i | bit;
                for (long col = 0; col < dim; ++col) {
                    const Complex r0 = cur(i, col);
                    const Complex r1 = cur(i1, col);
                    tmp(i, col) = e(0, 0) * r0 + e(0, 1) * r1;
                    tmp(i1, col) = e(1, 0) * r0 + e(1, 1) * r1;
                }
            }
            // columns: acc += tmp * E_q^dag
            for (long jcol = 0; jcol < dim; ++jcol) {
                if (jcol & bit) continue;
                const long j1 = jcol | bit;
                for (long row = 0; row < dim; ++row) {
                    const Complex c0 = tmp(row, jcol);
                    const Complex c1 = tmp(row, j1);
                    acc(row, jcol) += c0 * std::conj(e(0, 0)) + c1 * std::conj(e(0, 1));
                    acc(row, j1) += c0 * std::conj(e(1, 0)) + c1 * std::conj(e(1, 1));
                }
            }
        }
        cur = acc;
    }
    return cur;
}

Eigen::Matrix4cd reduce_to_pair(const DensityOperator& rho, int n, int q1, int q2) {
    if (q1 == q2 || q1 < 0 || q2 < 0 || q1 >= n || q2 >= n) {
        throw std::invalid_argument("reduce_to_pair: bad qubit indices");
    }
    const long dim = 1L << n;
    const long b1 = 1L << q1;
    const long b2 = 1L << q2;
    const long keep = b1 | b2;

    Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
    for (long i = 0; i < dim; ++i) {
        const int ri = 2 * ((i >> q1) & 1) + ((i >> q2) & 1);
        const long rest = i & ~keep;
        for (int cj = 0; cj < 4; ++cj) {
            long jIdx = rest;
            if (cj & 2) jIdx |= b1;
            if (cj & 1) jIdx |= b2;
            out(ri, cj) += rho(i, jIdx);
        }
    }
    return out;
}

PairMoments pair_moments(const Eigen::Matrix4cd& rho12) {
    PairMoments m;
    // sigma_z (x) 1 is diagonal (+1 on |0.>, -1 on |1.>)
    m.mz = (rho12(0, 0) + rho12(1, 1) - rho12(2, 2) - rho12(3, 3)).real();
    m.mzz = (rho12(0, 0) - rho12(1, 1) - rho12(2, 2) + rho12(3, 3)).real();
    m.y = rho12(2, 1).real();   // <10|rho|01> = <s1+ s2->
    m.u = rho12(0, 3);          // <00|rho|11> = <s1- s2->
    return m;
}

CollectiveOps::CollectiveOps(int n_) : n(n_) {
    check_density_capacity(n);
    const long dim = 1L << n;
    jx = Eigen::MatrixXcd::Zero(dim, dim);
    jy = Eigen::MatrixXcd::Zero(dim, dim);
    jz = Eigen::MatrixXcd::Zero(dim, dim);
    for (int q = 0; q < n; ++q) {
        const long bit = 1L << q;
        for (long i = 0; i < dim; ++i) {
            const bool ground = (i & bit) != 0;
            jz(i, i) += ground ? -0.5 : 0.5;
            const long flipped = i ^ bit;
            jx(flipped, i) += 0.5;
            // <flipped|sigma_y|i>: +i when i holds |0>, -i when it holds |1>
            jy(flipped, i) += ground ? Complex(0.0, -0.5) : Complex(0.0, 0.5);
        }
    }
    const Eigen::MatrixXcd* js[3] = {&jx, &jy, &jz};
    for (int k = 0; k < 3; ++k) {
        for (int l = k; l < 3; ++l) {
            s[k][l] = 0.5 * ((*js[k]) * (*js[l]) + (*js[l]) * (*js[k]));
            if (l != k) s[l][k] = s[k][l];
        }
    }
    const Eigen::MatrixXcd jm = jx - Complex(0.0, 1.0) * jy;
    jm2 = jm * jm;
}

namespace {

Complex trace_prod(const DensityOperator& rho, const Eigen::MatrixXcd& obs) {
    // tr(rho * obs) without forming the product
    return (rho.transpose().cwiseProduct(obs)).sum();
}

}  // namespace

CollectiveMoments collective_moments(const DensityOperator& rho, const CollectiveOps& ops) {
    CollectiveMoments cm;
    cm.first(0) = trace_prod(rho, ops.jx).real();
    cm.first(1) = trace_prod(rho, ops.jy).real();
    cm.first(2) = trace_prod(rho, ops.jz).real();
    for (int k = 0; k < 3; ++k) {
        for (int l = 0; l < 3; ++l) cm.c(k, l) = trace_prod(rho, ops.s[k][l]).real();
    }
    cm.jm2 = trace_prod(rho, ops.jm2);
    cm.j2 = cm.c.trace();
    return cm;
}

double symmetry_identity_violation(const CollectiveMoments& cm,
                                   const Eigen::Matrix4cd& rho12, int n) {
    const double pair = static_cast<double>(n) * (n - 1);
    const auto corr = [&](const Eigen::Matrix4cd& op) {
        return (rho12 * op).trace();
    };

    Eigen::Matrix4cd xx = Eigen::Matrix4cd::Zero();
    xx(0, 3) = xx(1, 2) = xx(2, 1) = xx(3, 0) = 1.0;
    Eigen::Matrix4cd yy = Eigen::Matrix4cd::Zero();
    yy(0, 3) = yy(3, 0) = -1.0;
    yy(1, 2) = yy(2, 1) = 1.0;
    Eigen::Matrix4cd zz = Eigen::Matrix4cd::Zero();
    zz(0, 0) = zz(3, 3) = 1.0;
    zz(1, 1) = zz(2, 2) = -1.0;
    // [sigma_1x, sigma_2y]_+ = 2 sigma_1x sigma_2y  (different qubits commute)
    Eigen::Matrix4cd xy2 = Eigen::Matrix4cd::Zero();
    xy2(0, 3) = xy2(2, 1) = Complex(0.0, -2.0);
    xy2(1, 2) = xy2(3, 0) = Complex(0.0, 2.0);

    double worst = 0.0;
    const double local[3] = {corr(xx).real(), corr(yy).real(), corr(zz).real()};
    for (int k = 0; k < 3; ++k) {
        worst = std::max(worst, std::abs(cm.c(k, k) - (n / 4.0 + pair / 4.0 * local[k])));
    }
    const Complex u = pair_moments(rho12).u;
    worst = std::max(worst, std::abs(cm.jm2 - pair * u));
    const double anti = corr(xy2).real();
    worst = std::max(worst, std::abs(2.0 * cm.c(0, 1) - pair / 4.0 * anti));
    return worst;
}

namespace {

// Variance of J along direction d, from first and symmetrized second moments.
double direction_variance(const CollectiveMoments& cm, const Eigen::Vector3d& d) {
    const double second = d.dot(cm.c * d);
    const double first = d.dot(cm.first);
    return second - first * first;
}

// Minimum perpendicular-plane variance: 720-direction scan plus golden-section
// refinement. Uses nothing but definitional variances.
double min_perp_variance(const CollectiveMoments& cm) {
    Eigen::Vector3d axis = cm.first;
    if (axis.norm() < 1e-12) axis = Eigen::Vector3d::UnitZ();
    axis.normalize();
    Eigen::Vector3d e1 = axis.cross(Eigen::Vector3d::UnitX());
    if (e1.norm() < 1e-6) e1 = axis.cross(Eigen::Vector3d::UnitY());
    e1.normalize();
    const Eigen::Vector3d e2 = axis.cross(e1);

    const auto var_at = [&](double phi) {
        return direction_variance(cm, std::cos(phi) * e1 + std::sin(phi) * e2);
    };

    constexpr int kDirections = 720;
    double best_phi = 0.0;
    double best = var_at(0.0);
    for (int i = 1; i < kDirections; ++i) {
        const double phi = 2.0 * std::numbers::pi * i / kDirections;
        const double v = var_at(phi);
        if (v < best) {
            best = v;
            best_phi = phi;
        }
    }

    const double step = 2.0 * std::numbers::pi / kDirections;
    double lo = best_phi - step;
    double hi = best_phi + step;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = var_at(c);
    double fd = var_at(d);
    for (int it = 0; it < 80; ++it) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = var_at(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = var_at(d);
        }
    }
    return std::min(fc, fd);
}

}  // namespace

CollectiveXi xi_collective(const CollectiveMoments& cm, int n) {
    CollectiveXi out;
    out.xi1_sq = (2.0 / n) * (cm.c(0, 0) + cm.c(1, 1) - std::abs(cm.jm2));
    out.xi1_sq_scan = 4.0 * min_perp_variance(cm) / n;

    const double mean2 = cm.first.squaredNorm();
    if (std::sqrt(mean2) * 2.0 / n > kMeanSpinEps) {
        out.xi2_sq = (n * n / 4.0) * out.xi1_sq / mean2;
    }

    const Eigen::Matrix3d gamma = cm.c - cm.first * cm.first.transpose();
    const Eigen::Matrix3d g = (n - 1) * gamma + cm.c;

    // 2x2 xy block plus the zz entry (the block structure of parity states).
    const double half_tr = 0.5 * (g(0, 0) + g(1, 1));
    const double disc = std::sqrt(0.25 * (g(0, 0) - g(1, 1)) * (g(0, 0) - g(1, 1)) +
                                  g(0, 1) * g(0, 1));
    const double lam_block = half_tr - disc;
    const double lam_zz = g(2, 2);
    const double lam_min_block = std::min(lam_block, lam_zz);
    out.min_branch = (lam_block <= lam_zz) ? MinBranch::XI1 : MinBranch::VARSIGMA;

    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(g, Eigen::EigenvaluesOnly);
    const double lam_min_general = es.eigenvalues().minCoeff();

    const double denom = cm.j2 - n / 2.0;
    if (denom <= 0.0) throw std::domain_error("xi_collective: <J.J> - n/2 is not positive");
    out.xi3_sq = lam_min_block / denom;
    out.xi3_sq_general = lam_min_general / denom;
    out.varsigma_sq = (4.0 / (static_cast<double>(n) * n)) * lam_zz;
    return out;
}

namespace {

double mixed_dev(double a, double b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

double mixed_dev(Complex a, Complex b) {
    return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

VerifyReport verify_point(ChannelKind kind, double p, int n, double theta0,
                          double tol, const CollectiveOps& ops) {
    if (ops.n != n) throw std::invalid_argument("verify_point: ops built for a different n");
    const EnsembleSpec spec(n, theta0);
    const ChannelSpec channel(kind, p);

    // Closed-form side: Table-II moments plus the analytic parameter curves.
    const InitialScalars init(spec);
    const PairMoments mc = evolve_moments(channel, init.m0);
    const SqueezingReport rc = report_at(kind, init, p);

    // Brute-force side, recomputed from definitions.
    const DensityOperator rho0 = density_from_state(twisted_state(n, spec.theta0));
    const DensityOperator rho = product_channel(channel, rho0);
    const Eigen::Matrix4cd rho12 = reduce_to_pair(rho, n, 0, 1);
    const PairMoments mo = pair_moments(rho12);
    const CollectiveMoments cm = collective_moments(rho, ops);
    const CollectiveXi xio = xi_collective(cm, n);
    const double cr_o = (n - 1) * concurrence_general(rho12);
    const double czz_o = (n - 1) * (mo.mzz - mo.mz * mo.mz);
    const double czz_c = czz(mc, n);

    VerifyReport rep;
    rep.kind = kind;
    rep.n = n;
    rep.theta0 = spec.theta0;
    rep.p = p;

    auto add = [&rep](const std::string& name, double c, double o) {
        rep.items.push_back({name, c, o, mixed_dev(c, o)});
    };
    add("mz", mc.mz, mo.mz);
    add("mzz", mc.mzz, mo.mzz);
    add("y", mc.y, mo.y);
    rep.items.push_back({"u", std::abs(mc.u), std::abs(mo.u), mixed_dev(mc.u, mo.u)});
    add("xi1_sq", rc.xi1_sq, xio.xi1_sq);
    // xi2 = xi1/<sigma_z>^2 carries condition number 2/|mz|: below |mz| ~ 3e-5
    // the brute-force mz (absolute accuracy ~1e-16) cannot pin xi2 to 1e-9,
    // and the squeezing content (zeta2 = 0, mean spin effectively gone) agrees
    // exactly. Compare only when both sides have a usable mean spin.
    constexpr double kXi2CompareEps = 3e-5;
    const bool mean_c = std::abs(mc.mz) > kXi2CompareEps;
    const bool mean_o = std::abs(mo.mz) > kXi2CompareEps;
    if (mean_c != mean_o) {
        rep.items.push_back({"xi2_sq", rc.xi2_sq.value_or(0.0), xio.xi2_sq.value_or(0.0),
                             std::numeric_limits<double>::infinity()});
    } else if (mean_c && rc.xi2_sq && xio.xi2_sq) {
        add("xi2_sq", *rc.xi2_sq, *xio.xi2_sq);
    } else {
        rep.items.push_back({"xi2_sq", rc.xi2_sq.value_or(0.0), xio.xi2_sq.value_or(0.0), 0.0});
    }
    add("xi3_sq", rc.xi3_sq, xio.xi3_sq_general);
    add("cr", rc.cr, cr_o);
    add("czz", czz_c, czz_o);
    add("varsigma_sq", rc.varsigma_sq, xio.varsigma_sq);

    // Oracle-internal consistency: the two Gamma eigenvalue routes, exchange
    // symmetry of an arbitrary second pair, and the global-local identities.
    rep.items.push_back({"xi3_block_route", xio.xi3_sq, xio.xi3_sq_general,
                         mixed_dev(xio.xi3_sq, xio.xi3_sq_general)});
    double exchange = 0.0;
    if (n > 2) {
        const Eigen::Matrix4cd rho13 = reduce_to_pair(rho, n, 0, 2);
        exchange = (rho12 - rho13).cwiseAbs().maxCoeff();
    }
    rep.items.push_back({"exchange", 0.0, exchange, exchange});
    const double ident = symmetry_identity_violation(cm, rho12, n);
    rep.items.push_back({"global_local", 0.0, ident, ident});

    rep.max_deviation = 0.0;
    for (const auto& it : rep.items) rep.max_deviation = std::max(rep.max_deviation, it.deviation);
    rep.pass = rep.max_deviation <= tol;
    return rep;
}

}  // namespace sqz::oracle

#include "sqz/channels.hpp"

#include <cmath>
#include <stdexcept>

#include "sqz/moments.hpp"

namespace sqz {

namespace {
constexpr double kDpcMaxP = 4.0 / 3.0;
}

std::string_view channel_token(ChannelKind kind) {
    switch (kind) {
        case ChannelKind::ADC: return "adc";
        case ChannelKind::PDC: return "pdc";
        case ChannelKind::DPC: return "dpc";
    }
    throw std::logic_error("channel_token: bad kind");
}

ChannelKind channel_from_token(std::string_view token) {
    if (token == "adc") return ChannelKind::ADC;
    if (token == "pdc") return ChannelKind::PDC;
    if (token == "dpc") return ChannelKind::DPC;
    throw std::invalid_argument("unknown channel token '" + std::string(token) +
                                "' (expected adc, pdc or dpc)");
}

ChannelSpec::ChannelSpec(ChannelKind kind_, double p_, bool extended_dpc)
    : kind(kind_), p(p_), s(1.0 - p_) {
    if (!std::isfinite(p)) throw std::invalid_argument("ChannelSpec: p must be finite");
    const double hi = (kind == ChannelKind::DPC && extended_dpc) ? kDpcMaxP : 1.0;
    if (p < 0.0 || p > hi) {
        throw std::invalid_argument("ChannelSpec: decoherence strength p=" + std::to_string(p) +
                                    " outside [0, " + std::to_string(hi) + "]");
    }
}

std::vector<QubitOperator> kraus_set(const ChannelSpec& spec) {
    const double p = spec.p;
    const double s = spec.s;
    std::vector<QubitOperator> ks;
    switch (spec.kind) {
        case ChannelKind::ADC: {
            QubitOperator e0 = QubitOperator::Zero();
            e0(0, 0) = std::sqrt(s);
            e0(1, 1) = 1.0;
            QubitOperator e1 = QubitOperator::Zero();
            e1(1, 0) = std::sqrt(p);
            ks = {e0, e1};
            break;
        }
        case ChannelKind::PDC: {
            QubitOperator e1 = QubitOperator::Zero();
            e1(0, 0) = std::sqrt(p);
            QubitOperator e2 = QubitOperator::Zero();
            e2(1, 1) = std::sqrt(p);
            ks = {std::sqrt(s) * QubitOperator::Identity(), e1, e2};
            break;
        }
        case ChannelKind::DPC: {
            const double pp = 3.0 * p / 4.0;
            if (pp > 1.0) throw std::invalid_argument("kraus_set: DPC p > 4/3");
            QubitOperator sx, sy, sz;
            sx << 0, 1, 1, 0;
            sy << 0, Complex(0, -1), Complex(0, 1), 0;
            sz << 1, 0, 0, -1;
            const double w = std::sqrt(pp / 3.0);
            ks = {std::sqrt(1.0 - pp) * QubitOperator::Identity(), w * sx, w * sy, w * sz};
            break;
        }
    }
    return ks;
}

bool is_density_operator(const QubitOperator& rho, double tol) {
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > tol) return false;
    // Eigenvalues of a 2x2 Hermitian matrix in closed form.
    const double a = rho(0, 0).real();
    const double d = rho(1, 1).real();
    const double off = std::abs(rho(0, 1));
    const double disc = std::sqrt(0.25 * (a - d) * (a - d) + off * off);
    return 0.5 * (a + d) - disc >= -tol;
}

QubitOperator apply_state(const ChannelSpec& spec, const QubitOperator& rho) {
    if (!is_density_operator(rho)) {
        throw std::domain_error("apply_state: input is not a density operator");
    }
    QubitOperator out = QubitOperator::Zero();
    for (const auto& e : kraus_set(spec)) out += e * rho * e.adjoint();
    return out;
}

QubitOperator apply_observable(const ChannelSpec& spec, const QubitOperator& a) {
    const double p = spec.p;
    const double s = spec.s;
    QubitOperator out;
    switch (spec.kind) {
        case ChannelKind::ADC: {
            const double rs = std::sqrt(s);
            out << s * a(0, 0) + p * a(1, 1), rs * a(0, 1),
                   rs * a(1, 0),              a(1, 1);
            break;
        }
        case ChannelKind::PDC:
            out << a(0, 0),     s * a(0, 1),
                   s * a(1, 0), a(1, 1);
            break;
        case ChannelKind::DPC: {
            const Complex mix = 0.5 * p * (a(0, 0) + a(1, 1));
            out << s * a(0, 0) + mix, s * a(0, 1),
                   s * a(1, 0),       s * a(1, 1) + mix;
            break;
        }
    }
    return out;
}

double strength_from_time(double gamma, double t) {
    if (gamma < 0.0 || t < 0.0 || !std::isfinite(gamma) || !std::isfinite(t)) {
        throw std::invalid_argument("strength_from_time: gamma and t must be >= 0");
    }
    return 1.0 - std::exp(-gamma * t);
}

}  // namespace sqz

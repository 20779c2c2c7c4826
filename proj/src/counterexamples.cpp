#include "fdrs/counterexamples.hpp"

#include <cmath>

namespace fdrs {

namespace {

double sine_of(double c) {
    return std::sqrt((1.0 - c) * (1.0 + c));
}

void check_block_args(double c, double a) {
    if (!(c >= 0.0 && c < 1.0)) throw ParameterError("rotation block: cosine outside [0, 1)");
    if (!(a >= 0.0)) throw ParameterError("rotation block: a must be nonnegative");
}

}  // namespace

void CompensatedSum::add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
        comp_ += (sum_ - t) + x;
    } else {
        comp_ += (x - t) + sum_;
    }
    sum_ = t;
}

Eigen::Matrix2d fdrs_block_matrix(double c, double a) {
    check_block_args(c, a);
    const double s = sine_of(c);
    Eigen::Matrix2d M;
    M << 0.0, -s * c, 0.0, c * c + a;
    return M / (a + 1.0);
}

Eigen::Vector2d block_eigenvector(double c, double a) {
    check_block_args(c, a);
    const double denom = a + c * c;
    if (denom == 0.0) return Eigen::Vector2d(0.0, 1.0);
    return Eigen::Vector2d(-c * sine_of(c) / denom, 1.0);
}

double block_eigenvalue(double c, double a) {
    check_block_args(c, a);
    return (a + c * c) / (a + 1.0);
}

SplitProblem RotationInstance::problem() const {
    const Index N = blocks();
    const Index d = 2 * N;
    FunctionDescriptor f = FunctionDescriptor::subspace_plus_sq_norm(Subspace::block_rotation_cosines(cosines), a);
    FunctionDescriptor g = FunctionDescriptor::shifted_sq_norm(1.0, Vector::Zero(d));
    return make_problem(std::move(f), std::move(g), Subspace::block_axis(N), 1.0);
}

std::vector<double> SlowSchedule::cosines() const {
    std::vector<double> c;
    c.reserve(b.size());
    for (double bj : b) c.push_back(std::sqrt(bj * (1.0 + a) - a));
    return c;
}

double SlowSchedule::margin() const {
    double m = kInf;
    for (std::size_t k = 0; k < n.size(); ++k) {
        const long nk = n[k];
        const double lhs = std::pow(b[static_cast<std::size_t>(nk)], static_cast<double>(k + 1)) /
                           static_cast<double>(nk + 1);
        m = std::min(m, lhs - std::exp(-1.0) * F(static_cast<double>(k + 1)));
    }
    return m;
}

SlowSchedule build_slow_schedule(std::function<double(double)> F, long k_max, double eta, double a, double eps0) {
    if (k_max < 0) throw ParameterError("build_slow_schedule: k_max must be nonnegative");
    if (!(a >= 0.0)) throw ParameterError("build_slow_schedule: a must be nonnegative");
    if (!(eta > a / (a + 1.0) && eta < 1.0)) throw ParameterError("build_slow_schedule: eta must lie in (a/(a+1), 1)");
    if (!(eps0 > 0.0 && eta + eps0 < 1.0)) throw ParameterError("build_slow_schedule: eps0 leaves no room below 1");
    double prev = kInf;
    for (long t = 0; t <= k_max + 1; ++t) {
        const double v = F(static_cast<double>(t));
        if (!(v > 0.0 && v < 1.0)) throw ParameterError("build_slow_schedule: F must map into (0, 1)");
        if (!(v < prev)) throw ParameterError("build_slow_schedule: F must be strictly decreasing");
        prev = v;
    }

    const double inv_e = std::exp(-1.0);
    SlowSchedule s;
    s.eta = eta;
    s.a = a;
    s.F = F;
    s.n.resize(static_cast<std::size_t>(k_max + 1));

    // Largest block index whose requirement stays at most (1/2)^{1/(k+1)}.
    long n_prev = 0;
    for (long k = 0; k <= k_max; ++k) {
        const double target = inv_e * F(static_cast<double>(k + 1));
        const long cap = static_cast<long>(std::floor(0.5 / target)) - 1;
        const long nk = std::max(n_prev, cap);
        if (static_cast<double>(nk + 1) * target >= 1.0) {
            throw ParameterError("build_slow_schedule: no admissible block at k = " + std::to_string(k));
        }
        s.n[static_cast<std::size_t>(k)] = nk;
        n_prev = nk;
    }

    const long n_max = s.n.back();
    std::vector<double> need(static_cast<std::size_t>(n_max + 1), 0.0);
    for (long k = 0; k <= k_max; ++k) {
        const long nk = s.n[static_cast<std::size_t>(k)];
        const double req = std::pow(static_cast<double>(nk + 1) * inv_e * F(static_cast<double>(k + 1)),
                                    1.0 / static_cast<double>(k + 1));
        auto& slot = need[static_cast<std::size_t>(nk)];
        slot = std::max(slot, req);
    }
    s.b.resize(need.size());
    double running = eta + eps0;
    for (std::size_t j = 0; j < need.size(); ++j) {
        const double req = need[j];
        running = std::max(running, req + (1.0 - req) * eps0);
        if (!(running < 1.0)) throw ParameterError("build_slow_schedule: b reached 1");
        s.b[j] = running;
    }
    if (!(s.margin() > 0.0)) throw NumericalError("build_slow_schedule: constructed schedule violates its invariant");
    return s;
}

CounterexampleStart arbitrarily_slow_instance(const SlowSchedule& schedule) {
    CounterexampleStart out;
    out.instance.cosines = schedule.cosines();
    out.instance.a = schedule.a;
    const Index N = out.instance.blocks();
    out.z0.resize(2 * N);
    for (Index i = 0; i < N; ++i) {
        const Eigen::Vector2d zi = block_eigenvector(out.instance.cosines[static_cast<std::size_t>(i)], schedule.a);
        out.z0.segment<2>(2 * i) = zi / (zi.norm() * static_cast<double>(i + 1));
    }
    return out;
}

CounterexampleStart sublinear_instance(double alpha, double a, Index blocks) {
    if (!(alpha > 0.5)) throw ParameterError("sublinear_instance: alpha must exceed 1/2");
    if (!(a >= 0.0)) throw ParameterError("sublinear_instance: a must be nonnegative");
    if (blocks <= 0) throw ParameterError("sublinear_instance: need at least one block");
    CounterexampleStart out;
    out.instance.a = a;
    out.instance.cosines.resize(static_cast<std::size_t>(blocks));
    const double kappa = 0.5 + 2.0 * (a + 1.0) * (a + 1.0);
    const double scale = std::sqrt(2.0 * alpha * kappa) * std::exp(1.0 / (a + 1.0));
    out.z0.resize(2 * blocks);
    for (Index i = 0; i < blocks; ++i) {
        const double di = static_cast<double>(i);
        const double c = std::sqrt(di / (di + 1.0));
        out.instance.cosines[static_cast<std::size_t>(i)] = c;
        const Eigen::Vector2d zi = block_eigenvector(c, a);
        out.z0.segment<2>(2 * i) = scale * zi / (zi.norm() * std::pow(di + 1.0, alpha));
    }
    return out;
}

double truncation_deficit(long k, Index blocks, double alpha) {
    return std::pow(static_cast<double>(k + 1) / static_cast<double>(blocks + 1), 2.0 * alpha);
}

BlockRun run_blocks(const RotationInstance& inst, const Vector& z0, long iterations) {
    const Index N = inst.blocks();
    require_dim(z0.size(), 2 * N, "run_blocks: z0");
    if (iterations < 0) throw ParameterError("run_blocks: iterations must be nonnegative");
    std::vector<Eigen::Matrix2d> T(static_cast<std::size_t>(N));
    std::vector<Eigen::Vector2d> xf_rows(static_cast<std::size_t>(N));  // (T - P_{V^perp}) acts through z_2 only
    for (Index i = 0; i < N; ++i) {
        const double c = inst.cosines[static_cast<std::size_t>(i)];
        const double s = sine_of(c);
        T[static_cast<std::size_t>(i)] = fdrs_block_matrix(c, inst.a);
        xf_rows[static_cast<std::size_t>(i)] = Eigen::Vector2d(-s * c, -s * s) / (inst.a + 1.0);
    }
    Vector z = z0;
    BlockRun out;
    const auto cap = static_cast<std::size_t>(iterations + 1);
    out.z_sq.reserve(cap);
    out.xh_sq.reserve(cap);
    out.xf_sq.reserve(cap);
    for (long k = 0;; ++k) {
        CompensatedSum zs, hs, fs;
        for (Index i = 0; i < N; ++i) {
            const double z1 = z(2 * i);
            const double z2 = z(2 * i + 1);
            zs.add(z1 * z1 + z2 * z2);
            hs.add(z1 * z1);
            const Eigen::Vector2d xf = xf_rows[static_cast<std::size_t>(i)] * z2;
            fs.add(xf.squaredNorm());
        }
        out.z_sq.push_back(zs.value());
        out.xh_sq.push_back(hs.value());
        out.xf_sq.push_back(fs.value());
        if (k == iterations) break;
        for (Index i = 0; i < N; ++i) {
            z.segment<2>(2 * i) = T[static_cast<std::size_t>(i)] * z.segment<2>(2 * i);
        }
    }
    return out;
}

}  // namespace fdrs

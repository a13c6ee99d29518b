#include "sgl/lightlike.hpp"

#include <cmath>

namespace sgl {

std::string to_string(Distribution d) {
  switch (d) {
    case Distribution::E0: return "E0";
    case Distribution::E0_nu: return "E0nu";
    case Distribution::E: return "E";
    case Distribution::E_nu: return "Enu";
    case Distribution::Eprime: return "Eprime";
    case Distribution::Eprime_nu: return "Eprimenu";
    case Distribution::radical: return "radical";
    case Distribution::screen: return "screen";
    case Distribution::tangent: return "tangent";
  }
  return "?";
}

std::string to_string(Conn c) {
  switch (c) {
    case Conn::levi_civita: return "levi_civita";
    case Conn::nabla: return "nabla";
    case Conn::nabla_star: return "nabla_star";
    case Conn::qs: return "qs";
  }
  return "?";
}

// ---- FieldAlongN --------------------------------------------------------------

FieldAlongN FieldAlongN::coordinate(int k) {
  return FieldAlongN([k](const auto& f) { return decltype(f.p)(f.J.col(k)); },
                     "du" + std::to_string(k + 1));
}

FieldAlongN FieldAlongN::radical(int i) {
  return FieldAlongN([i](const auto& f) { return decltype(f.p)(f.xi.col(i)); },
                     "xi" + std::to_string(i + 1));
}

FieldAlongN FieldAlongN::ltr(int i) {
  return FieldAlongN([i](const auto& f) { return decltype(f.p)(f.ltr.col(i)); },
                     "N" + std::to_string(i + 1));
}

FieldAlongN FieldAlongN::screen_transversal(int a) {
  return FieldAlongN([a](const auto& f) { return decltype(f.p)(f.stv.col(a)); },
                     "W" + std::to_string(a + 1));
}

FieldAlongN FieldAlongN::nu() {
  return FieldAlongN([](const auto& f) { return f.nu; }, "nu");
}

FieldAlongN FieldAlongN::parameter_affine(const VecX& a0, const MatX& b) {
  return FieldAlongN(
      [a0, b](const auto& f) {
        using T = typename std::decay_t<decltype(f)>::Scalar;
        const Vec<T> a = lift<T>(a0) + lift<T>(b) * f.u;
        return Vec<T>(f.J * a);
      },
      "affine");
}

FieldAlongN FieldAlongN::section(Distribution d, int k) {
  return FieldAlongN(
      [d, k](const auto& f) {
        using T = typename std::decay_t<decltype(f)>::Scalar;
        return project<T>(f, d, Vec<T>(f.J.col(k)));
      },
      to_string(d) + "(du" + std::to_string(k + 1) + ")");
}

FieldAlongN FieldAlongN::phi_of(const FieldAlongN& y) {
  return FieldAlongN(
      [y](const auto& f) {
        using T = typename std::decay_t<decltype(f)>::Scalar;
        return Vec<T>(f.phi * y.at(f));
      },
      "phi " + y.label());
}

FieldAlongN FieldAlongN::tangential_of(const FieldAlongN& y) {
  return FieldAlongN([y](const auto& f) { return tangent_part(f, y.at(f)); }, "tan " + y.label());
}

FieldAlongN FieldAlongN::transversal_of(const FieldAlongN& y) {
  return FieldAlongN([y](const auto& f) { return transversal_part(f, y.at(f)); },
                     "tr " + y.label());
}

FieldAlongN FieldAlongN::T_of(const FieldAlongN& y) {
  return FieldAlongN(
      [y](const auto& f) {
        using T = typename std::decay_t<decltype(f)>::Scalar;
        return tangent_part(f, Vec<T>(f.phi * y.at(f)));
      },
      "T " + y.label());
}

FieldAlongN FieldAlongN::w_of(const FieldAlongN& y) {
  return FieldAlongN(
      [y](const auto& f) {
        using T = typename std::decay_t<decltype(f)>::Scalar;
        return transversal_part(f, Vec<T>(f.phi * y.at(f)));
      },
      "w " + y.label());
}

FieldAlongN FieldAlongN::project_of(Distribution d, const FieldAlongN& y) {
  return FieldAlongN(
      [d, y](const auto& f) {
        using T = typename std::decay_t<decltype(f)>::Scalar;
        return project<T>(f, d, y.at(f));
      },
      to_string(d) + "(" + y.label() + ")");
}

FieldAlongN FieldAlongN::scaled(double c, const FieldAlongN& y) {
  return FieldAlongN(
      [c, y](const auto& f) {
        using T = typename std::decay_t<decltype(f)>::Scalar;
        return Vec<T>(c * y.at(f));
      },
      y.label());
}

// ---- frame construction -------------------------------------------------------

namespace {

MatX normalized_columns(const MatX& m) {
  MatX out = m;
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    const double n = out.col(c).norm();
    if (n > 0.0) out.col(c) /= n;
  }
  return out;
}

template <class T>
Mat<T> hcat(const std::vector<const Mat<T>*>& blocks, Eigen::Index rows) {
  Eigen::Index cols = 0;
  for (auto* b : blocks) cols += b->cols();
  Mat<T> out(rows, cols);
  Eigen::Index c = 0;
  for (auto* b : blocks) {
    if (b->cols()) out.middleCols(c, b->cols()) = *b;
    c += b->cols();
  }
  return out;
}

template <class T>
Mat<T> vcat(const std::vector<Mat<T>>& blocks, Eigen::Index cols) {
  Eigen::Index rows = 0;
  for (auto& b : blocks) rows += b.rows();
  Mat<T> out(rows, cols);
  Eigen::Index r = 0;
  for (auto& b : blocks) {
    if (b.rows()) out.middleRows(r, b.rows()) = b;
    r += b.rows();
  }
  return out;
}

/// Relative distance of φξ from span(ξ), column by column.
double radical_invariance_defect(const MatX& xi, const MatX& phi) {
  if (xi.cols() == 0) return 0.0;
  const MatX pxi = phi * xi;
  const MatX coef = xi.colPivHouseholderQr().solve(pxi);
  double worst = 0.0;
  for (Eigen::Index c = 0; c < xi.cols(); ++c)
    worst = std::max(worst, (pxi.col(c) - xi * coef.col(c)).norm() / std::max(xi.col(c).norm(), 1e-300));
  return worst;
}

}  // namespace

FrameBuilder::FrameBuilder(Immersion imm, AmbientStructure amb, const VecX& anchor, FrameOptions opt)
    : imm_(std::move(imm)), amb_(std::move(amb)), opt_(opt), anchor_(anchor) {
  if (imm_.ambient_dim() != amb_.dim())
    throw StructuralError("FrameBuilder: immersion codomain does not match ambient dimension");
  if (anchor_.size() != imm_.param_dim())
    throw StructuralError("FrameBuilder: anchor has wrong dimension");
  if (!imm_.map.has_second_order())
    throw UsageError("FrameBuilder: immersion needs second-order evaluation");
  construct<double>(anchor_, &gauge_);
}

template <class T>
FrameT<T> FrameBuilder::build(const Vec<T>& u) const {
  return construct<T>(u, nullptr);
}

template FrameT<double> FrameBuilder::build<double>(const Vec<double>&) const;
template FrameT<D1> FrameBuilder::build<D1>(const Vec<D1>&) const;

template <class T>
FrameT<T> FrameBuilder::construct(const Vec<T>& u, FrameGauge* fit) const {
  constexpr bool is_double = std::is_same_v<T, double>;
  const int m = imm_.param_dim();
  const int dim = imm_.ambient_dim();
  FrameT<T> f;
  f.u = u;
  f.p = imm_.map.eval<T>(u);
  f.J = imm_.map.jacobian(u);
  if constexpr (is_double) {
    if (numerical_rank(f.J, opt_.rank_tol) < m)
      throw ImmersionError("immersion Jacobian is rank deficient at the sample point");
  }
  f.g = amb_.g.at<T>(f.p);
  if (amb_.has_contact()) {
    f.has_contact = true;
    f.phi = amb_.contact->phi.template at<T>(f.p);
    f.eta = amb_.contact->eta.template at<T>(f.p);
    f.nu = amb_.contact->nu.template at<T>(f.p);
  }

  // Radical distribution.
  const Mat<T> G = f.J.transpose() * f.g * f.J;
  if (fit) {
    fit->radical = NullGauge::fit(values(G), opt_.rank_tol);
    fit->radical_rank = fit->radical.nullity();
  }
  const FrameGauge& gg = fit ? *fit : gauge_;
  const int r = gg.radical_rank;
  if constexpr (is_double) {
    if (!fit && numerical_rank(G, opt_.rank_tol) != m - r)
      throw ClassificationError("radical rank differs from the anchor point (" +
                                std::to_string(m - numerical_rank(G, opt_.rank_tol)) + " vs " +
                                std::to_string(r) + ")");
  }
  f.rad_params = gg.radical.basis<T>(G);
  f.xi = f.J * f.rad_params;

  // Lightlike transversal bundle.
  if (fit) {
    fit->phi_adapted = false;
    fit->complex_selection.clear();
    if (f.has_contact && opt_.phi_adapted && r > 0 && r % 2 == 0 &&
        radical_invariance_defect(values(f.xi), values(f.phi)) < 1e-6) {
      const MatX xi = values(f.xi), phi = values(f.phi);
      MatX acc(dim, 0);
      for (int j = 0; j < r; ++j) {
        MatX trial(dim, acc.cols() + 2);
        trial << acc, xi.col(j), phi * xi.col(j);
        if (numerical_rank(normalized_columns(trial), 1e-8) == trial.cols()) {
          acc = trial;
          fit->complex_selection.push_back(j);
        }
      }
      fit->phi_adapted = 2 * static_cast<int>(fit->complex_selection.size()) == r;
      if (!fit->phi_adapted) fit->complex_selection.clear();
    }
  }
  Mat<T> C(dim, r);
  if (gg.phi_adapted) {
    for (std::size_t a = 0; a < gg.complex_selection.size(); ++a) {
      Vec<T> c = solve<T>(f.g, Vec<T>(f.xi.col(gg.complex_selection[a])));
      c -= f.eta.dot(c) * f.nu;
      C.col(2 * a) = c;
      C.col(2 * a + 1) = f.phi * c;
    }
  } else if (r > 0) {
    C = solve<T>(f.g, f.xi);
  }
  if (r > 0) {
    const Mat<T> P = C.transpose() * f.g * f.xi;
    if constexpr (is_double) {
      const double cond = condition_number(P);
      if (!(cond < 1e12)) throw FrameError("lightlike transversal pairing is ill-conditioned", cond);
    }
    const Mat<T> Ct = C.transpose();
    const Mat<T> Cp = solve<T>(P, Ct).transpose();
    const Mat<T> A = Cp.transpose() * f.g * Cp;
    f.ltr = Cp - 0.5 * (f.xi * A);
  } else {
    f.ltr = Mat<T>(dim, 0);
  }

  // Screen: non-free coordinate fields with their radical parts removed.
  const auto& piv = gg.radical.pivot_columns();
  Mat<T> sel = Mat<T>::Zero(m, static_cast<Eigen::Index>(piv.size()));
  for (std::size_t c = 0; c < piv.size(); ++c) sel(piv[c], c) = T(1.0);
  if (r > 0) f.screen_params = sel - f.rad_params * (f.ltr.transpose() * f.g * f.J * sel);
  else f.screen_params = sel;
  f.screen = f.J * f.screen_params;

  // Screen-transversal bundle: ρ̃-orthogonal to TN and ltr.
  const Mat<T> JN = hcat<T>({&f.J, &f.ltr}, dim);
  if (fit) fit->stv_seed = null_space(MatX(values(JN).transpose() * values(f.g)), opt_.rank_tol);
  const Mat<T> seed = lift<T>(gg.stv_seed);
  if (seed.cols() > 0) {
    const Mat<T> gram = JN.transpose() * f.g * JN;
    const Mat<T> rhs = JN.transpose() * f.g * seed;
    f.stv = seed - JN * solve<T>(gram, rhs);
  } else {
    f.stv = Mat<T>(dim, 0);
  }
  f.full = hcat<T>({&f.J, &f.ltr, &f.stv}, dim);
  if constexpr (is_double) {
    if (f.full.cols() != dim) throw FrameError("frame does not span the ambient space");
  }

  // SGL subbundles E₀ and E′.
  if (fit) {
    fit->sgl = false;
    fit->sgl_skip_reason.clear();
    if (!opt_.build_sgl) {
      fit->sgl_skip_reason = "disabled";
    } else if (!f.has_contact) {
      fit->sgl_skip_reason = "ambient has no contact structure";
    } else {
      const MatX J = values(f.J);
      const VecX nu = values(f.nu);
      const VecX k = J.colPivHouseholderQr().solve(nu);
      const VecX radnu = values(f.ltr).transpose() * values(f.g) * nu;
      if ((J * k - nu).norm() > 1e-8 * nu.norm()) fit->sgl_skip_reason = "structure vector field is not tangent";
      else if (radnu.size() && radnu.cwiseAbs().maxCoeff() > 1e-8) fit->sgl_skip_reason = "structure vector field is not in the screen";
      else fit->sgl = true;
    }
  }
  if (gg.sgl) {
    f.has_sgl = true;
    const Mat<T> a = f.eta.transpose() * f.screen;
    if (fit) fit->screen_ker_eta = NullGauge::fit(values(a), opt_.rank_tol);
    const Mat<T> sp = f.screen * gg.screen_ker_eta.basis<T>(a);
    const Mat<T> psp = f.phi * sp;
    const Mat<T> M = vcat<T>({Mat<T>(f.stv.transpose() * f.g * psp), Mat<T>(f.xi.transpose() * f.g * psp),
                              Mat<T>(f.ltr.transpose() * f.g * psp)},
                             psp.cols());
    if (fit) fit->e0 = NullGauge::fit(values(M), opt_.rank_tol);
    f.e0 = psp * gg.e0.basis<T>(M);
    const Mat<T> Mp = vcat<T>({Mat<T>(f.e0.transpose() * f.g * f.screen),
                               Mat<T>(f.nu.transpose() * f.g * f.screen)},
                              f.screen.cols());
    if (fit) fit->eprime = NullGauge::fit(values(Mp), opt_.rank_tol);
    f.eprime = f.screen * gg.eprime.basis<T>(Mp);
  }
  return f;
}

MatX tangent_frame(const Immersion& imm, const VecX& u, double rank_tol) {
  MatX J = imm.map.jacobian(u);
  if (numerical_rank(J, rank_tol) < imm.param_dim())
    throw ImmersionError("immersion Jacobian is rank deficient");
  return J;
}

RadicalInfo radical_distribution(const Immersion& imm, const MetricField& g, const VecX& u,
                                 double rank_tol) {
  const MatX J = tangent_frame(imm, u, rank_tol);
  const MatX G = J.transpose() * g(imm(u)) * J;
  RadicalInfo info;
  info.singular_values = singular_values(G);
  info.params = null_space(G, rank_tol);
  info.rank = static_cast<int>(info.params.cols());
  info.basis = J * info.params;
  return info;
}

int radical_rank_over(const Immersion& imm, const MetricField& g, const std::vector<VecX>& us,
                      double rank_tol) {
  if (us.empty()) throw UsageError("radical_rank_over: empty sample set");
  const int r0 = radical_distribution(imm, g, us[0], rank_tol).rank;
  for (std::size_t i = 1; i < us.size(); ++i) {
    const int r = radical_distribution(imm, g, us[i], rank_tol).rank;
    if (r != r0)
      throw ClassificationError("radical rank varies across samples (" + std::to_string(r0) +
                                " at point 0, " + std::to_string(r) + " at point " +
                                std::to_string(i) + "): not a lightlike submanifold");
  }
  return r0;
}

// ---- point context ------------------------------------------------------------

PointContext::PointContext(const FrameBuilder& b, const VecX& u) : b_(&b), u_(u) {
  f_ = b.build<double>(u);
  const int m = f_.m();
  df_.reserve(m);
  VecX e = VecX::Zero(m);
  for (int k = 0; k < m; ++k) {
    e(k) = 1.0;
    df_.push_back(b.build_along(u, e));
    e(k) = 0.0;
  }
  gam_ = christoffel(b.ambient().g, f_.p);
  jpinv_ = (f_.J.transpose() * f_.J).ldlt().solve(f_.J.transpose());
}

VecX PointContext::param_coords(const VecX& tangent) const {
  const VecX k = jpinv_ * tangent;
  if ((f_.J * k - tangent).norm() > 1e-8 * std::max(1.0, tangent.norm()))
    throw UsageError("PointContext: direction is not tangent to the submanifold");
  return k;
}

VecX PointContext::derivative(const FieldAlongN& y, const VecX& x) const {
  const VecX k = param_coords(x);
  VecX out = VecX::Zero(f_.dim());
  for (int i = 0; i < static_cast<int>(k.size()); ++i) {
    if (k(i) == 0.0) continue;
    out += k(i) * derivatives(y.at(df_[i]));
  }
  return out;
}

VecX PointContext::bracket(const FieldAlongN& x, const FieldAlongN& y) const {
  return derivative(y, value(x)) - derivative(x, value(y));
}

VecX PointContext::K(const VecX& x, const VecX& y) const { return b_->ambient().k(f_.p, x, y); }

VecX PointContext::connection(Conn c, const VecX& x, const FieldAlongN& y) const {
  const VecX yv = value(y);
  VecX out = derivative(y, x) + gam_.contract(x, yv);
  switch (c) {
    case Conn::levi_civita: break;
    case Conn::nabla: out += K(x, yv); break;
    case Conn::nabla_star: out -= K(x, yv); break;
    case Conn::qs:
      if (!f_.has_contact) throw UsageError("quarter-symmetric connection needs a contact structure");
      out -= f_.eta.dot(x) * (f_.phi * yv);
      break;
  }
  return out;
}

GaussWeingartenParts split(const Frame& f, const VecX& v) {
  const VecX c = frame_coords(f, v);
  GaussWeingartenParts p;
  p.tangential = f.J * c.head(f.m());
  p.ltr = f.ltr * c.segment(f.m(), f.r());
  p.screen_transversal = f.stv * c.tail(f.s());
  p.total = v;
  return p;
}

GaussWeingartenParts gauss_decompose(const PointContext& ctx, Conn c, const FieldAlongN& x,
                                     const FieldAlongN& y) {
  const VecX yv = ctx.value(y);
  ctx.param_coords(yv);  // Y must be tangent
  return split(ctx.frame(), ctx.connection(c, x, y));
}

GaussWeingartenParts weingarten_decompose(const PointContext& ctx, Conn c, const FieldAlongN& x,
                                          const FieldAlongN& v) {
  const VecX vv = ctx.value(v);
  const VecX tan = tangent_part(ctx.frame(), vv);
  if (tan.norm() > 1e-8 * std::max(1.0, vv.norm()))
    throw UsageError("weingarten_decompose: field is not transversal at the point");
  return split(ctx.frame(), ctx.connection(c, x, v));
}

ScreenSplit screen_split(const PointContext& ctx, Conn c, const FieldAlongN& x,
                         const FieldAlongN& y) {
  const VecX t = gauss_decompose(ctx, c, x, y).tangential;
  ScreenSplit s;
  s.radical = radical_part(ctx.frame(), t);
  s.screen = t - s.radical;
  return s;
}

std::vector<FieldAlongN> tangent_test_fields(int m, int count, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<FieldAlongN> out;
  for (int i = 0; i < count; ++i) {
    VecX a0(m);
    MatX b(m, m);
    for (int k = 0; k < m; ++k) a0(k) = rng.uniform(-1.0, 1.0);
    for (int k = 0; k < m; ++k)
      for (int l = 0; l < m; ++l) b(k, l) = rng.uniform(-0.5, 0.5);
    out.push_back(FieldAlongN::parameter_affine(a0, b));
  }
  return out;
}

}  // namespace sgl

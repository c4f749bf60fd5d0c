#include "specneumann/cases.hpp"

#include "specneumann/expression.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace specneumann {

namespace {

std::vector<std::string> domain_variables(int dimension) {
  return dimension == 2 ? std::vector<std::string>{"s", "t"}
                        : std::vector<std::string>{"s1", "s2", "s3"};
}

ScalarField field_from(const Expression& expr) {
  return [expr](const Eigen::VectorXd& s) { return expr(s); };
}

/// Manufactures source and flux from an exact solution given as an
/// expression: f = -Laplace(u) (+ gamma u) and g = grad(u) . n with the
/// normal taken from the mapping's boundary frame.
struct ManufacturedData {
  ScalarField source;
  BoundaryField flux;
};

ManufacturedData manufacture(const Expression& u, const Expression* gamma,
                             std::shared_ptr<const DomainMapping> mapping) {
  const int d = mapping->dimension();
  std::vector<Expression> grad(d);
  Expression lap_parts[3];
  for (int i = 0; i < d; ++i) {
    grad[i] = u.derivative(i);
    lap_parts[i] = grad[i].derivative(i);
  }

  ManufacturedData data;
  if (gamma) {
    data.source = [u, g = *gamma, lap0 = lap_parts[0], lap1 = lap_parts[1],
                   lap2 = d == 3 ? lap_parts[2] : Expression{}, d](const Eigen::VectorXd& s) {
      double lap = lap0(s) + lap1(s);
      if (d == 3) lap += lap2(s);
      return -lap + g(s) * u(s);
    };
  } else {
    data.source = [lap0 = lap_parts[0], lap1 = lap_parts[1],
                   lap2 = d == 3 ? lap_parts[2] : Expression{}, d](const Eigen::VectorXd& s) {
      double lap = lap0(s) + lap1(s);
      if (d == 3) lap += lap2(s);
      return -lap;
    };
  }
  data.flux = [grad, mapping](const Eigen::VectorXd& param) {
    const BoundaryFrame frame = boundary_frame(*mapping, param);
    double g = 0.0;
    for (std::size_t i = 0; i < grad.size(); ++i)
      g += grad[i](frame.point_omega) * frame.normal(i);
    return g;
  };
  return data;
}

CaseDefinition manufactured_case(std::string name, int dimension, ProblemKind kind,
                                 std::shared_ptr<const DomainMapping> mapping,
                                 const std::string& u_text, const std::string& gamma_text) {
  const auto vars = domain_variables(dimension);
  const Expression u = Expression::parse(u_text, vars);
  Expression gamma;
  const bool helmholtz = kind == ProblemKind::helmholtz;
  if (helmholtz) gamma = Expression::parse(gamma_text, vars);

  CaseDefinition problem;
  problem.name = std::move(name);
  problem.dimension = dimension;
  problem.kind = kind;
  problem.mapping = mapping;
  if (helmholtz) problem.gamma = field_from(gamma);
  ManufacturedData data = manufacture(u, helmholtz ? &gamma : nullptr, mapping);
  problem.source = std::move(data.source);
  problem.flux = std::move(data.flux);
  problem.exact = field_from(u);
  return problem;
}

Eigen::Matrix3d ellipsoid_matrix() {
  Eigen::Matrix3d m;
  m << 1, -3, 0, 2, 1, 0, 1, 1, 1;
  return m;
}

SphereFunction surface_from_expression(const std::string& text) {
  const std::vector<std::string> vars{"theta", "phi"};
  const Expression r = Expression::parse(text, vars);
  const Expression r_theta = r.derivative(0);
  const Expression r_phi = r.derivative(1);
  SphereFunction surface;
  surface.value = [r](double th, double ph) { return r(Eigen::Vector2d(th, ph)); };
  surface.dtheta = [r_theta](double th, double ph) { return r_theta(Eigen::Vector2d(th, ph)); };
  surface.dphi = [r_phi](double th, double ph) { return r_phi(Eigen::Vector2d(th, ph)); };
  return surface;
}

}  // namespace

CaseDefinition planar_quadratic_case(double a, ProblemKind kind) {
  return manufactured_case(kind == ProblemKind::helmholtz ? "planar-quadratic"
                                                          : "planar-quadratic-poisson",
                           2, kind, planar_quadratic_map(a), "exp(-s^2)*cos(pi*t)",
                           "exp(s-t)");
}

CaseDefinition ellipsoid_case(ProblemKind kind) {
  return manufactured_case("ellipsoid", 3, kind, linear_map_3d(ellipsoid_matrix()),
                           "s1*exp(s2)*sin(s3)", "1");
}

CaseDefinition star_case(ProblemKind kind, int smoothness_es) {
  return manufactured_case("star", 3, kind, star_shaped_map(test_surface(), smoothness_es),
                           "s1*exp(s2)*sin(s3)", "1");
}

CaseDefinition case_from_config(const RunConfig& config) {
  validate_config(config);
  const ProblemKind kind =
      config.mode == "helmholtz" ? ProblemKind::helmholtz : ProblemKind::pure_poisson;
  if (config.case_name == "planar-quadratic") return planar_quadratic_case(config.a, kind);
  if (config.case_name == "ellipsoid") return ellipsoid_case(kind);
  if (config.case_name == "star") return star_case(kind, config.es);

  // Custom case.
  std::shared_ptr<const DomainMapping> mapping;
  if (config.map == "identity") {
    mapping = identity_map(config.dimension);
  } else if (config.map == "planar-quadratic") {
    mapping = planar_quadratic_map(config.a);
  } else if (config.map == "linear3d") {
    if (config.m_entries.size() != 9)
      throw std::invalid_argument("M: linear3d mapping needs 9 entries");
    Eigen::Matrix3d m;
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) m(r, c) = config.m_entries[3 * r + c];
    mapping = linear_map_3d(m);
  } else {
    mapping = star_shaped_map(
        config.surface.empty() ? test_surface() : surface_from_expression(config.surface),
        config.es);
  }
  validate_invertibility(*mapping);

  if (!config.u_exact.empty()) {
    CaseDefinition problem = manufactured_case("custom", config.dimension, kind, mapping,
                                               config.u_exact, config.gamma.empty() ? "1" : config.gamma);
    if (!config.f.empty() || !config.g.empty())
      throw std::invalid_argument("custom case: give either u_exact or explicit f/g, not both");
    return problem;
  }

  CaseDefinition problem;
  problem.name = "custom";
  problem.dimension = config.dimension;
  problem.kind = kind;
  problem.mapping = mapping;
  const auto vars = domain_variables(config.dimension);
  if (kind == ProblemKind::helmholtz)
    problem.gamma = field_from(Expression::parse(config.gamma, vars));
  problem.source = field_from(Expression::parse(config.f, vars));
  if (!config.g.empty()) {
    const std::vector<std::string> bvars =
        config.dimension == 2 ? std::vector<std::string>{"theta"}
                              : std::vector<std::string>{"theta", "phi"};
    const Expression g = Expression::parse(config.g, bvars);
    problem.flux = [g](const Eigen::VectorXd& param) { return g(param); };
  }
  return problem;
}

ProblemSpec problem_for(const CaseDefinition& problem, int degree, int quad_order) {
  ProblemSpec spec;
  spec.dimension = problem.dimension;
  spec.kind = problem.kind;
  spec.gamma = problem.gamma;
  spec.source = problem.source;
  spec.flux = problem.flux;
  spec.mapping = problem.mapping;
  spec.degree = degree;
  spec.quadrature_order = quad_order;
  return spec;
}

RunReport run_single(const CaseDefinition& problem, int degree, int quad_order,
                     AssemblyBackend backend) {
  const auto start = std::chrono::steady_clock::now();
  const GalerkinSystem system = assemble(problem_for(problem, degree, quad_order), backend);
  const SpectralSolution solution = solve_dense(system);

  RunReport report;
  report.degree = degree;
  report.basis_size = system.basis->size();
  report.quadrature_order = system.quadrature_order;
  report.condition = condition_number(system);
  report.max_error = problem.exact ? max_grid_error(solution, problem.exact)
                                   : std::numeric_limits<double>::quiet_NaN();
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::vector<RunReport> run_sweep(const CaseDefinition& problem,
                                 const std::vector<int>& degrees, int quad_order) {
  std::vector<RunReport> reports;
  reports.reserve(degrees.size());
  for (int n : degrees) reports.push_back(run_single(problem, n, quad_order));
  return reports;
}

}  // namespace specneumann

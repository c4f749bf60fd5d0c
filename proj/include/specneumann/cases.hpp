#pragma once

#include "specneumann/config.hpp"
#include "specneumann/galerkin.hpp"
#include "specneumann/solve.hpp"

#include <string>
#include <vector>

namespace specneumann {

/// A fully wired problem: mapping, PDE data, and (when known) the exact
/// solution used for error reporting. Data fields take physical-domain
/// coordinates; the flux takes the reference boundary parameter.
struct CaseDefinition {
  std::string name;
  int dimension = 2;
  ProblemKind kind = ProblemKind::helmholtz;
  std::shared_ptr<const DomainMapping> mapping;
  ScalarField gamma;
  ScalarField source;
  BoundaryField flux;
  ScalarField exact;
};

/// Planar test problem: the quadratic map with parameter a,
/// u = exp(-s^2) cos(pi t), gamma = exp(s - t); f and g manufactured.
CaseDefinition planar_quadratic_case(double a, ProblemKind kind);

/// Ellipsoid test problem: the linear map with rows (1,-3,0), (2,1,0),
/// (1,1,1) and u = s1 exp(s2) sin(s3); gamma = 1 in helmholtz mode.
CaseDefinition ellipsoid_case(ProblemKind kind);

/// Star-shaped test problem: the blended radial map over the test
/// surface, same u and gamma as the ellipsoid case.
CaseDefinition star_case(ProblemKind kind, int smoothness_es = 5);

/// A case built from a validated custom config: expressions for the data
/// (manufactured from u_exact when given) over one of the named mappings.
CaseDefinition case_from_config(const RunConfig& config);

/// Per-degree run summary; `max_error` is NaN when no exact solution is
/// available.
struct RunReport {
  int degree = 0;
  int basis_size = 0;
  double max_error = 0.0;
  double condition = 1.0;
  int quadrature_order = 0;
  double seconds = 0.0;
};

RunReport run_single(const CaseDefinition& problem, int degree, int quad_order = -1,
                     AssemblyBackend backend = AssemblyBackend::parallel);

std::vector<RunReport> run_sweep(const CaseDefinition& problem,
                                 const std::vector<int>& degrees, int quad_order = -1);

/// The assembled-problem description for one degree, for callers that
/// need the system itself (tests, benchmarks).
ProblemSpec problem_for(const CaseDefinition& problem, int degree, int quad_order = -1);

}  // namespace specneumann

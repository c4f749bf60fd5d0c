// Times the serial reference assembly against the blocked OpenMP kernel
// on one planar and one ellipsoid problem and reports the agreement.

#include "specneumann/cases.hpp"
#include "specneumann/galerkin.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <chrono>
#include <cstdio>

namespace {

using namespace specneumann;

double time_assembly(const ProblemSpec& spec, AssemblyBackend backend,
                     GalerkinSystem* out) {
  const auto start = std::chrono::steady_clock::now();
  *out = assemble(spec, backend);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void bench_case(const char* label, const CaseDefinition& problem, int degree, int quad) {
  const ProblemSpec spec = problem_for(problem, degree, quad);
  GalerkinSystem serial, parallel;
  const double t_serial = time_assembly(spec, AssemblyBackend::serial, &serial);
  const double t_parallel = time_assembly(spec, AssemblyBackend::parallel, &parallel);
  const double diff = (serial.matrix - parallel.matrix).cwiseAbs().maxCoeff();
  const double scale = serial.matrix.cwiseAbs().maxCoeff();
  std::printf("%-22s n=%2d N=%4d   serial %8.3fs   parallel %8.3fs   speedup %5.2fx   max|diff| %.2e (rel %.2e)\n",
              label, degree, static_cast<int>(serial.matrix.rows()), t_serial, t_parallel,
              t_serial / t_parallel, diff, diff / scale);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"assembly kernel benchmark: serial reference vs OpenMP"};
  int n2 = 14, n3 = 8, quad = -1;
  app.add_option("--n2", n2, "planar degree");
  app.add_option("--n3", n3, "ellipsoid degree");
  app.add_option("--quad", quad, "quadrature order (-1 = auto)");
  CLI11_PARSE(app, argc, argv);

  std::printf("threads: %d\n", omp_get_max_threads());
  bench_case("planar-quadratic", planar_quadratic_case(0.5, ProblemKind::helmholtz), n2, quad);
  bench_case("ellipsoid", ellipsoid_case(ProblemKind::helmholtz), n3, quad);
  return 0;
}

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "ghzmd/ghzmd.h"

namespace {
const double kPi = 3.14159265358979323846;
}

TEST_CASE("joints through the C API") {
  const double theta[3] = {kPi / 2, kPi / 2, kPi / 2};
  const double phi[3] = {0.3, 1.0, 2.2};
  double closed[8], born[8], eq[8];
  REQUIRE(ghzmd_closed_form_joint(theta, phi, closed) == GHZMD_OK);
  REQUIRE(ghzmd_born_rule_joint(theta, phi, born) == GHZMD_OK);
  REQUIRE(ghzmd_equatorial_joint(phi, eq) == GHZMD_OK);
  for (int i = 0; i < 8; ++i) {
    CHECK(std::abs(closed[i] - born[i]) < 1e-12);
    CHECK(std::abs(closed[i] - eq[i]) < 1e-12);
  }
  CHECK(ghzmd_expectation(eq) == doctest::Approx(std::cos(3.5)));

  char* js = nullptr;
  REQUIRE(ghzmd_joint_json(eq, &js) == GHZMD_OK);
  CHECK(std::string(js).find("\"+++\"") != std::string::npos);
  ghzmd_string_free(js);
}

TEST_CASE("invalid polar angle sets the error") {
  const double theta[3] = {4.0, 0.0, 0.0};
  const double phi[3] = {0, 0, 0};
  double out[8];
  CHECK(ghzmd_closed_form_joint(theta, phi, out) == GHZMD_ERR_INVALID_ARGUMENT);
  CHECK(std::strlen(ghzmd_last_error()) > 0);
  CHECK(ghzmd_closed_form_joint(nullptr, phi, out) == GHZMD_ERR_INVALID_ARGUMENT);
}

TEST_CASE("measure handles") {
  ghzmd_model_config cfg;
  ghzmd_model_config_default(&cfg);
  const double s1[3] = {0.0, kPi / 3, kPi / 6};
  const double s2[3] = {0.5, 2.0, 4.0};
  ghzmd_measure* a = nullptr;
  ghzmd_measure* b = nullptr;
  REQUIRE(ghzmd_measure_create(s1, &cfg, &a) == GHZMD_OK);
  REQUIRE(ghzmd_measure_create(s2, &cfg, &b) == GHZMD_OK);

  double mass = 0.0, d = -1.0, self = -1.0;
  CHECK(ghzmd_measure_mass(a, &mass) == GHZMD_OK);
  CHECK(mass == doctest::Approx(1.0));
  CHECK(ghzmd_measure_distance(a, b, &d) == GHZMD_OK);
  CHECK(d > 0.0);
  CHECK(d <= 2.0);
  CHECK(ghzmd_measure_distance(a, a, &self) == GHZMD_OK);
  CHECK(self == 0.0);

  double joint[8], eq[8];
  ghzmd_measure_joint(a, joint);
  ghzmd_equatorial_joint(s1, eq);
  for (int i = 0; i < 8; ++i) CHECK(joint[i] == doctest::Approx(eq[i]));

  std::vector<double> lambdas(100);
  std::vector<int> outcomes(100);
  CHECK(ghzmd_measure_sample(a, 3, 100, lambdas.data(), outcomes.data()) == GHZMD_OK);
  for (int o : outcomes) {
    CHECK(o >= 0);
    CHECK(o < 8);
  }

  CHECK(ghzmd_measure_joint(nullptr, joint) == GHZMD_ERR_INVALID_ARGUMENT);
  ghzmd_measure_destroy(a);
  ghzmd_measure_destroy(b);
  ghzmd_measure_destroy(nullptr);
}

TEST_CASE("literal construction reports a zero-length division") {
  ghzmd_model_config cfg;
  ghzmd_model_config_default(&cfg);
  cfg.mode = GHZMD_MODE_LITERAL;
  const double s[3] = {1.0, 1.0, 1.0};
  ghzmd_measure* m = nullptr;
  CHECK(ghzmd_measure_create(s, &cfg, &m) == GHZMD_ERR_ZERO_LENGTH_DIVISION);
  CHECK(m == nullptr);
}

TEST_CASE("report handles and budget errors") {
  ghzmd_model_config cfg;
  ghzmd_model_config_default(&cfg);
  ghzmd_search_config search;
  ghzmd_search_config_default(&search);
  search.multistarts = 1;
  search.max_iterations = 30;

  ghzmd_report* r = nullptr;
  search.grid = 5;
  CHECK(ghzmd_measurement_dependence(&cfg, &search, &r) == GHZMD_ERR_BUDGET_TOO_SMALL);
  CHECK(r == nullptr);

  search.grid = 12;
  REQUIRE(ghzmd_measurement_dependence(&cfg, &search, &r) == GHZMD_OK);
  const double m = ghzmd_report_m(r);
  CHECK(m >= 0.0);
  CHECK(m <= 2.0);
  CHECK(ghzmd_report_f(r) == doctest::Approx(1.0 - m / 2));
  CHECK(ghzmd_report_trace_length(r) > 0);
  char* js = nullptr;
  REQUIRE(ghzmd_report_json(r, &js) == GHZMD_OK);
  CHECK(std::string(js).find("\"argmax\"") != std::string::npos);
  ghzmd_string_free(js);
  ghzmd_report_destroy(r);
}

TEST_CASE("baseline through the C API") {
  CHECK(ghzmd_e1(0.0) == 1.0);
  int holds = 0;
  double slack = 0, at = 0;
  CHECK(ghzmd_dominance_check(1000, &holds, &slack, &at) == GHZMD_OK);
  CHECK(holds == 1);
  double residual = 0;
  char* js = nullptr;
  CHECK(ghzmd_mixture_decompose(0, 100, &residual, &js) == GHZMD_ERR_INVALID_ARGUMENT);
  REQUIRE(ghzmd_mixture_decompose(2, 200, &residual, &js) == GHZMD_OK);
  CHECK(residual < 0.1);
  ghzmd_string_free(js);
}

TEST_CASE("independence and oracle checks") {
  ghzmd_model_config cfg;
  ghzmd_model_config_default(&cfg);
  int independent = 1;
  CHECK(ghzmd_independence_check(&cfg, 20, 1, &independent) == GHZMD_OK);
  CHECK(independent == 0);

  int passed = 0;
  char* js = nullptr;
  CHECK(ghzmd_verify_oracle(1, 50, &passed, &js) == GHZMD_OK);
  CHECK(passed == 1);
  ghzmd_string_free(js);
}

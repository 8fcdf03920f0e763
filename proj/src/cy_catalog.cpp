#include <sstream>

#include "hyplyap/error.hpp"
#include "hyplyap/monodromy.hpp"

namespace hyplyap::monodromy {

namespace {

struct Row {
  int id;
  const char* label;
  int C;
  int d;
  const char* mu1;
  const char* mu2;
};

// The 14 hypergeometric Calabi-Yau families with h^{2,1} = 1.
constexpr Row kRows[] = {
    {1, "", 46, 1, "1/12", "5/12"},      {2, "", 44, 2, "1/8", "3/8"},
    {3, "", 52, 4, "1/6", "1/2"},        {4, "P^4[5]", 50, 5, "1/5", "2/5"},
    {5, "", 56, 8, "1/4", "1/2"},        {6, "P^6[2^2,3]", 60, 12, "1/3", "1/2"},
    {7, "P^7[2^4]", 64, 16, "1/2", "1/2"}, {8, "", 22, 1, "1/6", "1/6"},
    {9, "", 34, 1, "1/10", "3/10"},      {10, "", 32, 2, "1/6", "1/4"},
    {11, "", 42, 3, "1/6", "1/3"},       {12, "", 40, 4, "1/4", "1/4"},
    {13, "", 48, 6, "1/4", "1/3"},       {14, "", 54, 9, "1/3", "1/3"},
};

CYCase make_case(const Row& row) {
  CYCase c;
  c.id = row.id;
  c.label = row.label;
  c.C = row.C;
  c.d = row.d;
  c.mu1 = parse_rational(row.mu1);
  c.mu2 = parse_rational(row.mu2);

  const Rational half = ratio(1, 2), sixth = ratio(1, 6);
  c.T0 = RationalMatrix{{1, 0, 0, 0}, {1, 1, 0, 0}, {half, 1, 1, 0}, {sixth, half, 1, 1}};

  const Rational c12 = ratio(row.C, 12);
  const Rational d(row.d);
  c.T1 = RationalMatrix::identity(4);
  c.T1(0, 1) = -c12;
  c.T1(0, 3) = -d;

  c.Omega = RationalMatrix(4, 4);
  c.Omega(0, 1) = c12;
  c.Omega(0, 3) = d;
  c.Omega(1, 0) = -c12;
  c.Omega(1, 2) = -d;
  c.Omega(2, 1) = d;
  c.Omega(3, 0) = -d;
  return c;
}

}  // namespace

HypergeometricParams CYCase::params() const {
  return HypergeometricParams::make({mu1, mu2, 1 - mu2, 1 - mu1}, {0, 0, 0, 0});
}

const std::vector<CYCase>& cy_catalog() {
  static const std::vector<CYCase> catalog = [] {
    std::vector<CYCase> out;
    for (const auto& row : kRows) out.push_back(make_case(row));
    return out;
  }();
  return catalog;
}

const CYCase& cy_case(int id) {
  if (id < 1 || id > 14) throw Error(ErrorCode::UnknownCase, "case id " + std::to_string(id) + " not in 1..14");
  return cy_catalog()[static_cast<std::size_t>(id - 1)];
}

std::string cy_catalog_csv() {
  std::ostringstream out;
  out << "id,label,C,d,mu1,mu2\n";
  for (const auto& c : cy_catalog()) {
    const std::string label = c.label.find(',') == std::string::npos ? c.label : '"' + c.label + '"';
    out << c.id << ',' << label << ',' << c.C << ',' << c.d << ',' << to_string(c.mu1) << ',' << to_string(c.mu2)
        << '\n';
  }
  return out.str();
}

}  // namespace hyplyap::monodromy

#include "banachflow/scalar_spec.hpp"

#include <cmath>
#include <sstream>
#include <vector>

#include "banachflow/errors.hpp"

namespace banachflow {

double ScalarSpec::operator()(double t) const {
  switch (kind) {
    case Kind::Zero:
      return 0.0;
    case Kind::Constant:
      return coef;
    case Kind::Power:
      return coef * std::pow(t, expo);
    case Kind::Exponential:
      return coef * std::exp(expo * t);
  }
  return 0.0;
}

ScalarSpec ScalarSpec::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::istringstream in(text);
  std::string tok;
  while (std::getline(in, tok, ':')) parts.push_back(tok);
  if (parts.empty()) throw ConfigError("empty scalar descriptor");

  auto num = [&](size_t i) {
    try {
      return std::stod(parts.at(i));
    } catch (const std::exception&) {
      throw ConfigError("unparsable scalar descriptor '" + text + "'");
    }
  };

  if (parts[0] == "zero") return zero();
  if (parts[0] == "const" && parts.size() == 2) return constant(num(1));
  if (parts[0] == "pow" && parts.size() == 3) return power(num(1), num(2));
  if (parts[0] == "exp" && parts.size() == 3) return exponential(num(1), num(2));
  throw ConfigError("unknown scalar descriptor '" + text + "'");
}

std::string ScalarSpec::str() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::Zero:
      return "zero";
    case Kind::Constant:
      out << "const:" << coef;
      break;
    case Kind::Power:
      out << "pow:" << coef << ":" << expo;
      break;
    case Kind::Exponential:
      out << "exp:" << coef << ":" << expo;
      break;
  }
  return out.str();
}

}  // namespace banachflow

#pragma once

#include <stdexcept>
#include <string>

namespace statgeo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// linear algebra on indefinite forms
class DegenerateComplement : public Error { public: using Error::Error; };
class SingularPairing : public Error { public: using Error::Error; };
class GramSchmidtBreakdown : public Error { public: using Error::Error; };

// ambient geometry
class SingularMetric : public Error { public: using Error::Error; };
class AsymmetricInput : public Error { public: using Error::Error; };
class IndexChange : public Error { public: using Error::Error; };

// statistical models
class QuadratureDivergence : public Error { public: using Error::Error; };
class NonFiniteDensity : public Error { public: using Error::Error; };
class SingularFisherMetric : public Error { public: using Error::Error; };

// submanifolds
class RankNotConstant : public Error { public: using Error::Error; };
class PivotBreakdown : public Error { public: using Error::Error; };
class NotLightlike : public Error { public: using Error::Error; };

// scenario front end
class ScenarioParseError : public Error { public: using Error::Error; };
class FixtureConstructionError : public Error { public: using Error::Error; };

}  // namespace statgeo

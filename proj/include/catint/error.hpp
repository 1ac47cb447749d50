#pragma once

#include <stdexcept>
#include <string>

namespace catint {

// Base type for every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class BackendMismatch : public Error {
public:
    using Error::Error;
};

class OrderUnavailable : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class InvalidP : public Error {
public:
    using Error::Error;
};

class OutOfDomain : public Error {
public:
    using Error::Error;
};

class IndexOutOfRange : public Error {
public:
    using Error::Error;
};

class LevelOverflow : public Error {
public:
    using Error::Error;
};

class LevelZero : public Error {
public:
    using Error::Error;
};

class MixedLevels : public Error {
public:
    using Error::Error;
};

class InfiniteDimensional : public Error {
public:
    using Error::Error;
};

class MalformedRelation : public Error {
public:
    using Error::Error;
};

class ZeroTotalMeasure : public Error {
public:
    using Error::Error;
};

class UnsupportedConfiguration : public Error {
public:
    using Error::Error;
};

class InvalidWeight : public Error {
public:
    using Error::Error;
};

class EvaluationFailure : public Error {
public:
    using Error::Error;
};

class TargetInvalid : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

} // namespace catint

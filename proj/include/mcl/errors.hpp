#pragma once

#include <stdexcept>
#include <string>

namespace mcl {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotDivisible : Error {
    explicit NotDivisible(const std::string& what = "no exact Laurent quotient exists")
        : Error(what) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& what = "division by zero") : Error(what) {}
};

struct NotUnimodular : Error {
    explicit NotUnimodular(const std::string& what = "matrix determinant is not 1")
        : Error(what) {}
};

struct NotReduced : Error {
    explicit NotReduced(const std::string& what = "fraction is not reduced") : Error(what) {}
};

struct NotInterior : Error {
    explicit NotInterior(const std::string& what = "fraction has no Farey triple")
        : Error(what) {}
};

struct OutOfRange : Error {
    explicit OutOfRange(const std::string& what = "argument out of range") : Error(what) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& what = "index out of range") : Error(what) {}
};

struct TooLarge : Error {
    explicit TooLarge(const std::string& what = "instance too large for brute force")
        : Error(what) {}
};

struct InvalidOverlap : Error {
    explicit InvalidOverlap(const std::string& what = "overlap does not satisfy the "
                                                      "required conditions")
        : Error(what) {}
};

struct InadmissibleWalk : Error {
    explicit InadmissibleWalk(const std::string& what = "walk is not admissible")
        : Error(what) {}
};

struct ValidationFailed : Error {
    explicit ValidationFailed(const std::string& what = "triple validation failed")
        : Error(what) {}
};

struct NotReachable : Error {
    explicit NotReachable(const std::string& what = "descent did not reach an initial family")
        : Error(what) {}
};

struct SuiteUnknown : Error {
    explicit SuiteUnknown(const std::string& what = "unknown verification suite")
        : Error(what) {}
};

} // namespace mcl

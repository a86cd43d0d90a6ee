#ifndef RABISYM_ERRORS_HPP
#define RABISYM_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rabisym
{

struct InvalidParams : std::runtime_error
{
    explicit InvalidParams(const std::string& msg) : std::runtime_error(msg) {}
};

struct SectorViolation : std::runtime_error
{
    explicit SectorViolation(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnsupportedBias : std::runtime_error
{
    explicit UnsupportedBias(const std::string& msg) : std::runtime_error(msg) {}
};

struct NoSolution : std::runtime_error
{
    explicit NoSolution(const std::string& msg) : std::runtime_error(msg) {}
};

struct EmptyNullspace : std::runtime_error
{
    explicit EmptyNullspace(const std::string& msg) : std::runtime_error(msg) {}
};

struct IllConditioned : std::runtime_error
{
    explicit IllConditioned(const std::string& msg) : std::runtime_error(msg) {}
};

struct NonPositivePoly : std::runtime_error
{
    explicit NonPositivePoly(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotSymmetric : std::runtime_error
{
    explicit NotSymmetric(const std::string& msg) : std::runtime_error(msg) {}
};

struct UnlabeledScan : std::runtime_error
{
    explicit UnlabeledScan(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace rabisym

#endif

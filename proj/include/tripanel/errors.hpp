#pragma once

#include <stdexcept>
#include <string>

namespace tripanel {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// Triangle has zero area (all three coordinate-plane projections collinear).
class DegenerateElement : public Error
{
public:
    explicit DegenerateElement(const std::string& what = "degenerate element: zero area")
        : Error(what)
    {
    }
};

/// Reference subtriangle with r2 sin|theta| = 0; the third-side slope is undefined.
class DegenerateFrame : public Error
{
public:
    explicit DegenerateFrame(const std::string& what = "degenerate subtriangle frame")
        : Error(what)
    {
    }
};

/// Primitive evaluated where its integrand is unbounded.
class DomainError : public Error
{
public:
    using Error::Error;
};

/// Primitive key outside the admissible set.
class UnsupportedKey : public Error
{
public:
    using Error::Error;
};

/// Gradient or Hessian requested for an in-plane field point without opting into
/// finite-part semantics.
class FinitePartRequested : public Error
{
public:
    explicit FinitePartRequested(
        const std::string& what = "in-plane gradient/Hessian is a finite-part value; opt in to receive it")
        : Error(what)
    {
    }
};

/// Adaptive quadrature hit its depth or cell budget before meeting tolerance.
class NoConvergence : public Error
{
public:
    using Error::Error;
};

class SourceOutside : public Error
{
public:
    explicit SourceOutside(const std::string& what = "point source is not strictly inside the surface")
        : Error(what)
    {
    }
};

class EvalPointInsideOrOnSurface : public Error
{
public:
    explicit EvalPointInsideOrOnSurface(
        const std::string& what = "evaluation point is inside or on the surface")
        : Error(what)
    {
    }
};

/// Malformed input file (OFF mesh).
class ParseError : public Error
{
public:
    using Error::Error;
};

} // namespace tripanel

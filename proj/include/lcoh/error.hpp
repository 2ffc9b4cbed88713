#ifndef LCOH_ERROR_HPP
#define LCOH_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lcoh
{

class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// A ChainMap or SubmodulePresentation violating the module category.
class ConstraintError : public Error
{
public:
    using Error::Error;
};

class NotASubobject : public Error
{
public:
    NotASubobject() : Error("not a subobject: image is not contained in kernel") {}
};

class NotAComplex : public Error
{
public:
    explicit NotAComplex(std::size_t position)
        : Error("not a complex: d^" + std::to_string(position) + " o d^" + std::to_string(position - 1) + " != 0"),
          m_position(position)
    {
    }
    std::size_t position() const noexcept { return m_position; }

private:
    std::size_t m_position;
};

class ParseError : public Error
{
public:
    ParseError(std::size_t line, const std::string &what)
        : Error(line ? "line " + std::to_string(line) + ": " + what : what), m_line(line)
    {
    }
    // 1-based; 0 when the error is not tied to a line.
    std::size_t line() const noexcept { return m_line; }

private:
    std::size_t m_line;
};

} // namespace lcoh

#endif

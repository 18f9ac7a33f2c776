#pragma once

#include <stdexcept>
#include <string>

namespace emo {

/// An enumeration or sampling request exceeds an explicit size guard.
class SizeLimitError : public std::length_error {
public:
    explicit SizeLimitError(const std::string& what)
        : std::length_error(what)
    {
    }
};

} // namespace emo

// Copyright (c) 2026 The dsrisk developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef DSRISK_ERROR_HPP
#define DSRISK_ERROR_HPP

#include <stdexcept>
#include <string>

namespace dsrisk {

/// Base for every error this library raises. `code()` is a stable
/// machine-readable identifier, used verbatim in the CLI's JSON errors.
class Error : public std::runtime_error
{
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), m_code(std::move(code)) {}

    const std::string& code() const noexcept { return m_code; }

private:
    std::string m_code;
};

/// Argument outside an operation's mathematical domain.
class DomainError : public Error
{
public:
    explicit DomainError(const std::string& message) : Error("domain_error", message) {}
};

/// Invalid configuration (missing keys, inconsistent settings).
class ConfigError : public Error
{
public:
    explicit ConfigError(const std::string& message) : Error("config_error", message) {}
};

/// Requested risk ceiling cannot be met by any number of confirmations.
class UnreachableError : public Error
{
public:
    explicit UnreachableError(const std::string& message) : Error("unreachable", message) {}
};

/// Derived child key is invalid for this index; the caller should skip to i+1.
class InvalidChildError : public Error
{
public:
    explicit InvalidChildError(const std::string& message) : Error("invalid_child", message) {}
};

/// Hardened derivation attempted from public material.
class HardenedDerivationError : public Error
{
public:
    explicit HardenedDerivationError(const std::string& message) : Error("hardened_derivation", message) {}
};

/// Master key digest out of range; a different seed is required.
class ResampleSeedError : public Error
{
public:
    explicit ResampleSeedError(const std::string& message) : Error("resample_seed", message) {}
};

/// Wrong pass-phrase or encryption key, or tampered ciphertext.
class AuthenticationError : public Error
{
public:
    explicit AuthenticationError(const std::string& message) : Error("authentication_failed", message) {}
};

/// Unparseable input (bad hex, truncated envelope, bad path syntax).
class MalformedInputError : public Error
{
public:
    explicit MalformedInputError(const std::string& message) : Error("malformed_input", message) {}
};

} // namespace dsrisk

#endif // DSRISK_ERROR_HPP

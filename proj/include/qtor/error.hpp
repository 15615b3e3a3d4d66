#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "json.hpp"

namespace qtor {

// Every failure raised by the library carries a module-qualified code such as
// "qt_input.NonUnimodular" plus structured detail for the CLI report.
class Error : public std::runtime_error {
public:
    Error(std::string module, std::string code, const std::string& message,
          nlohmann::json detail = nlohmann::json::object())
        : std::runtime_error(message),
          module_(std::move(module)),
          code_(std::move(code)),
          detail_(std::move(detail)) {}

    const std::string& module() const noexcept { return module_; }
    const std::string& code() const noexcept { return code_; }
    std::string qualified_code() const { return module_ + "." + code_; }
    const nlohmann::json& detail() const noexcept { return detail_; }

private:
    std::string module_;
    std::string code_;
    nlohmann::json detail_;
};

}  // namespace qtor

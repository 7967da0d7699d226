#pragma once

#include <string>
#include <string_view>

#include "radspec/spectra.hpp"

namespace radspec {

/// {"space":{"kind","d","R"?},"symbol","tol","k_max","tail_bound"?,"entries":[{"k","sign","log_abs","multiplicity"}]}
/// A zero eigenvalue is written with sign 0 and log_abs null.
std::string to_json(const SpectrumTable& table, int indent = 2);
SpectrumTable spectrum_from_json(std::string_view text);

/// Columns k,sign,log_abs,multiplicity; log_abs is "-inf" for zero entries.
std::string to_csv(const SpectrumTable& table);

}  // namespace radspec

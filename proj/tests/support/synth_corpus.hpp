#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

namespace idsim::synth {

struct CorpusSpec {
    // Exact number of identifier declarations (classes, fields, methods,
    // parameters, locals) to plant across the generated tree.
    std::size_t declarations = 1000;
    std::uint64_t seed = 42;
    // Soft cap on declarations per generated file.
    std::size_t max_per_file = 60;
};

// Writes a deterministic Java source tree under root_dir. Every identifier
// declaration is planted deliberately, so a scan of the tree must yield
// exactly spec.declarations records. Returns the number planted.
std::size_t generate_corpus(const std::string& root_dir, const CorpusSpec& spec);

}  // namespace idsim::synth

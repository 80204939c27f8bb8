// Times the parallel kernels against their serial reference implementations
// on a generated corpus and checks that both produce identical bytes.
//
//   idsim_bench [declarations] [threads] [seed]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <random>
#include <string>

#include "idsim/classify.hpp"
#include "idsim/jsonl.hpp"
#include "idsim/pairing.hpp"
#include "idsim/pipeline.hpp"
#include "idsim/scan.hpp"
#include "support/synth_corpus.hpp"

namespace fs = std::filesystem;
using namespace idsim;

namespace {

template <typename Fn>
double timed(Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void print_row(const char* kernel, double serial, double parallel, bool identical) {
    std::printf("%-10s %9.3fs %9.3fs %8.2fx   %s\n", kernel, serial, parallel,
                parallel > 0.0 ? serial / parallel : 0.0, identical ? "ok" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    synth::CorpusSpec spec;
    spec.declarations = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 12000;
    ExecutionPolicy policy;
    policy.threads = argc > 2 ? std::atoi(argv[2]) : 0;
    spec.seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 42;

    std::mt19937_64 rng(std::random_device{}());
    const fs::path root =
        fs::temp_directory_path() / ("idsim_bench_" + std::to_string(rng() % 1000000));
    fs::create_directories(root);
    synth::generate_corpus(root.string(), spec);

    int mismatches = 0;

    ScanOutcome scan_serial_out;
    ScanOutcome scan_parallel_out;
    const double scan_serial_s =
        timed([&] { scan_serial_out = scan_project_serial(root.string(), "bench", ScanConfig{}); });
    const double scan_parallel_s = timed(
        [&] { scan_parallel_out = scan_project(root.string(), "bench", ScanConfig{}, policy); });
    if (!scan_serial_out.ok || !scan_parallel_out.ok) {
        std::fprintf(stderr, "scan failed: %s%s\n", scan_serial_out.error.c_str(),
                     scan_parallel_out.error.c_str());
        return 1;
    }
    const bool scan_same = inventory_to_jsonl(scan_serial_out.inventory) ==
                           inventory_to_jsonl(scan_parallel_out.inventory);
    mismatches += scan_same ? 0 : 1;

    const auto& records = scan_parallel_out.inventory.records;
    const TypeRegistry registry = TypeRegistry::builtin();
    const AbbreviationDictionary dict = AbbreviationDictionary::builtin();

    PairingOutcome pairs_serial_out;
    PairingOutcome pairs_parallel_out;
    const double pairs_serial_s = timed(
        [&] { pairs_serial_out = generate_candidate_pairs_serial(records, registry, PairConfig{}); });
    const double pairs_parallel_s = timed([&] {
        pairs_parallel_out = generate_candidate_pairs(records, registry, PairConfig{}, policy);
    });
    const bool pairs_same = pairs_to_jsonl(pairs_serial_out.pairs, records) ==
                            pairs_to_jsonl(pairs_parallel_out.pairs, records);
    mismatches += pairs_same ? 0 : 1;

    const auto& pairs = pairs_parallel_out.pairs;
    ClassifyOutcome classify_serial_out;
    ClassifyOutcome classify_parallel_out;
    const double classify_serial_s = timed([&] {
        classify_serial_out =
            classify_pairs_serial(pairs, records, registry, dict, ClassifyConfig{});
    });
    const double classify_parallel_s = timed([&] {
        classify_parallel_out =
            classify_pairs(pairs, records, registry, dict, ClassifyConfig{}, policy);
    });
    const bool classify_same = labels_to_jsonl(classify_serial_out.labels, records) ==
                               labels_to_jsonl(classify_parallel_out.labels, records);
    mismatches += classify_same ? 0 : 1;

    std::printf("corpus: %zu identifiers, %llu files, %zu pairs, %zu labels (seed %llu)\n",
                records.size(),
                static_cast<unsigned long long>(scan_parallel_out.inventory.files_scanned),
                pairs.size(), classify_parallel_out.labels.size(),
                static_cast<unsigned long long>(spec.seed));
    std::printf("threads: %d (0 means every core)\n\n", policy.threads);
    std::printf("%-10s %10s %10s %9s   %s\n", "kernel", "serial", "parallel", "speedup",
                "outputs");
    print_row("scan", scan_serial_s, scan_parallel_s, scan_same);
    print_row("pairs", pairs_serial_s, pairs_parallel_s, pairs_same);
    print_row("classify", classify_serial_s, classify_parallel_s, classify_same);

    std::error_code ec;
    fs::remove_all(root, ec);
    return mismatches == 0 ? 0 : 1;
}

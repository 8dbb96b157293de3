#include "naqs/bench.hpp"
#include "naqs/qasm.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <unistd.h>

using namespace naqs;

namespace {

const std::string kCorpusDir = std::string(NAQS_SOURCE_DIR) + "/tests/data/qasm/";

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("naqs_bench_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

} // namespace

TEST_CASE("bench_circuit reports rep counts and ordered stats") {
    const Circuit c = parse_qasm_file(kCorpusDir + "ghz5.qasm");
    const BenchRecord rec = bench_circuit(c, Engine::SV, 5);
    CHECK(rec.name == "ghz5");
    CHECK(rec.qubits == 5);
    CHECK(rec.gates == 5); // measures and barriers excluded
    CHECK(rec.repetitions == 5);
    REQUIRE(rec.times_ms.size() == 5);
    for (double t : rec.times_ms) CHECK(t >= 0.0);
    CHECK(rec.median_ms >= rec.min_ms);
    CHECK_FALSE(rec.skipped);

    CHECK_THROWS_AS(bench_circuit(c, Engine::SV, 0), ContractError);
}

TEST_CASE("bench_directory isolates malformed files") {
    TempDir tmp;
    std::ofstream(tmp.path / "good.qasm") << "OPENQASM 2.0;\nqreg q[2];\nh q[0];\ncx q[0],q[1];\n";
    std::ofstream(tmp.path / "bad.qasm") << "OPENQASM 2.0;\nqreg q[1];\nnope q[0];\n";

    const auto records = bench_directory(tmp.path.string(), Engine::SV, 2);
    REQUIRE(records.size() == 2);
    CHECK(records[0].name == "bad");
    CHECK(records[0].skipped);
    CHECK(records[0].reason.find("unsupported gate") != std::string::npos);
    CHECK(records[1].name == "good");
    CHECK_FALSE(records[1].skipped);
    CHECK(records[1].times_ms.size() == 2);
}

TEST_CASE("bench_directory requires qasm files") {
    TempDir tmp;
    CHECK_THROWS_AS(bench_directory(tmp.path.string(), Engine::SV, 1), ContractError);
    CHECK_THROWS_AS(bench_directory((tmp.path / "missing").string(), Engine::SV, 1),
                    ContractError);
}

TEST_CASE("dm engine bench respects the qubit ceiling") {
    TempDir tmp;
    std::ofstream(tmp.path / "wide.qasm") << "OPENQASM 2.0;\nqreg q[16];\nh q[0];\n";
    const auto records = bench_directory(tmp.path.string(), Engine::DM, 1);
    REQUIRE(records.size() == 1);
    CHECK(records[0].skipped);
    CHECK(records[0].reason.find("density-matrix limit") != std::string::npos);
}

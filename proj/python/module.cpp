#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "noncebench/errors.hpp"
#include "noncebench/header.hpp"
#include "noncebench/ingest.hpp"
#include "noncebench/pow.hpp"
#include "noncebench/search.hpp"
#include "noncebench/stats.hpp"

namespace py = pybind11;
using namespace noncebench;

namespace {

Hash256 hash_from_bytes(const py::bytes& b) {
    const std::string s = b;
    if (s.size() != 32) {
        throw py::value_error("expected 32 bytes, got " + std::to_string(s.size()));
    }
    Hash256 out;
    std::copy(s.begin(), s.end(), reinterpret_cast<char*>(out.data()));
    return out;
}

py::bytes bytes_from_hash(const Hash256& h) {
    return py::bytes(reinterpret_cast<const char*>(h.data()), h.size());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "nonce-search primitives: header codec, double-SHA-256 proof of work, "
              "brute-force and inner-for-loop searches, sampling, t-test";

    py::register_exception<MalformedInput>(m, "MalformedInputError", PyExc_ValueError);
    py::register_exception<TargetOverflow>(m, "TargetOverflowError", PyExc_OverflowError);
    py::register_exception<InvalidArgument>(m, "InvalidArgumentError", PyExc_ValueError);

    py::class_<BlockHeader>(m, "Header")
        .def(py::init([](std::uint32_t version, const py::bytes& prev_hash,
                         const py::bytes& merkle_root, std::uint32_t timestamp,
                         std::uint32_t bits, std::uint32_t nonce) {
                 BlockHeader h;
                 h.version = version;
                 h.prev_hash = hash_from_bytes(prev_hash);
                 h.merkle_root = hash_from_bytes(merkle_root);
                 h.timestamp = timestamp;
                 h.nbits = bits;
                 h.nonce = nonce;
                 return h;
             }),
             py::arg("version"), py::arg("prev_hash"), py::arg("merkle_root"),
             py::arg("timestamp"), py::arg("bits"), py::arg("nonce") = 0,
             "prev_hash and merkle_root are 32 bytes in internal (wire) order")
        .def_static(
            "from_display",
            [](std::uint32_t version, const std::string& prev_hash_display,
               const std::string& merkle_root_display, std::uint32_t timestamp,
               std::uint32_t bits, std::uint32_t nonce) {
                BlockHeader h;
                h.version = version;
                h.prev_hash = hash_from_display_hex(prev_hash_display);
                h.merkle_root = hash_from_display_hex(merkle_root_display);
                h.timestamp = timestamp;
                h.nbits = bits;
                h.nonce = nonce;
                return h;
            },
            py::arg("version"), py::arg("prev_hash_display"),
            py::arg("merkle_root_display"), py::arg("timestamp"), py::arg("bits"),
            py::arg("nonce") = 0, "hashes given as 64-char display hex")
        .def_readwrite("version", &BlockHeader::version)
        .def_property(
            "prev_hash", [](const BlockHeader& h) { return bytes_from_hash(h.prev_hash); },
            [](BlockHeader& h, const py::bytes& b) { h.prev_hash = hash_from_bytes(b); })
        .def_property(
            "merkle_root",
            [](const BlockHeader& h) { return bytes_from_hash(h.merkle_root); },
            [](BlockHeader& h, const py::bytes& b) { h.merkle_root = hash_from_bytes(b); })
        .def_readwrite("timestamp", &BlockHeader::timestamp)
        .def_readwrite("bits", &BlockHeader::nbits)
        .def_readwrite("nonce", &BlockHeader::nonce)
        .def("serialize",
             [](const BlockHeader& h) {
                 const HeaderBytes bytes = serialize_header(h);
                 return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
             })
        .def_static("parse", [](const py::bytes& raw) {
            const std::string s = raw;
            return parse_header(std::span<const std::uint8_t>(
                reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
        });

    m.def(
        "double_sha256",
        [](const py::bytes& data) {
            const std::string s = data;
            const Digest256 d = double_sha256(std::span<const std::uint8_t>(
                reinterpret_cast<const std::uint8_t*>(s.data()), s.size()));
            return py::bytes(reinterpret_cast<const char*>(d.data()), d.size());
        },
        py::arg("data"));

    m.def(
        "display_hex",
        [](const py::bytes& hash) { return display_hex(hash_from_bytes(hash)); },
        py::arg("hash"), "byte-reversed lowercase hex of a 32-byte hash");

    m.def(
        "decode_nbits_hex",
        [](std::uint32_t bits) { return decode_nbits(bits).hex(); },
        py::arg("bits"), "256-bit target as 64 hex digits");

    py::class_<VerificationResult>(m, "VerificationResult")
        .def_readonly("valid", &VerificationResult::valid)
        .def_readonly("hash_display", &VerificationResult::hash_display)
        .def_readonly("target_hex", &VerificationResult::target_hex)
        .def_readonly("sign_bit_warning", &VerificationResult::sign_bit_warning)
        .def("__repr__", [](const VerificationResult& v) {
            return "VerificationResult(valid=" + std::string(v.valid ? "True" : "False") +
                   ", hash_display='" + v.hash_display + "')";
        });

    m.def("verify", &verify_block, py::arg("header"),
          "recompute the header hash and compare against its own target");

    py::class_<SearchOutcome>(m, "SearchOutcome")
        .def_readonly("found_nonce", &SearchOutcome::found_nonce)
        .def_readonly("hashes_performed", &SearchOutcome::hashes_performed)
        .def_readonly("exhausted", &SearchOutcome::exhausted)
        .def("__repr__", [](const SearchOutcome& o) {
            return "SearchOutcome(found_nonce=" +
                   (o.found_nonce ? std::to_string(*o.found_nonce) : std::string("None")) +
                   ", hashes_performed=" + std::to_string(o.hashes_performed) +
                   ", exhausted=" + (o.exhausted ? "True" : "False") + ")";
        });

    m.def(
        "brute_force_search",
        [](const BlockHeader& h, std::uint64_t max_hashes, std::uint32_t start_nonce) {
            return brute_force_search(h, SearchBudget{max_hashes, start_nonce});
        },
        py::arg("header"), py::arg("max_hashes"), py::arg("start_nonce") = 0,
        py::call_guard<py::gil_scoped_release>());

    m.def(
        "ifl_search",
        [](const BlockHeader& h, std::uint32_t particles, std::uint64_t max_hashes,
           std::uint32_t start_nonce) {
            return ifl_search(h, particles, SearchBudget{max_hashes, start_nonce});
        },
        py::arg("header"), py::arg("particles"), py::arg("max_hashes"),
        py::arg("start_nonce") = 0, py::call_guard<py::gil_scoped_release>());

    m.def(
        "sample_heights",
        [](std::uint64_t seed, std::uint64_t count, std::uint64_t max_height) {
            return sample_heights(SamplerConfig{seed, count, max_height});
        },
        py::arg("seed"), py::arg("count"), py::arg("max_height") = 557132,
        "distinct heights in [1, max_height], deterministic per seed");

    py::class_<TTestResult>(m, "TTestResult")
        .def_readonly("t_statistic", &TTestResult::t_statistic)
        .def_readonly("degrees_of_freedom", &TTestResult::degrees_of_freedom)
        .def_readonly("critical_value", &TTestResult::critical_value)
        .def_readonly("reject_null", &TTestResult::reject_null)
        .def_readonly("alpha", &TTestResult::alpha)
        .def("__repr__", [](const TTestResult& t) {
            char buf[128];
            std::snprintf(buf, sizeof(buf),
                          "TTestResult(t=%.6g, df=%.6g, critical=%.3f, reject_null=%s)",
                          t.t_statistic, t.degrees_of_freedom, t.critical_value,
                          t.reject_null ? "True" : "False");
            return std::string(buf);
        });

    m.def(
        "two_sample_t",
        [](const std::vector<double>& a, const std::vector<double>& b,
           const std::string& variant, double alpha) {
            TTestVariant v;
            if (variant == "pooled") {
                v = TTestVariant::Pooled;
            } else if (variant == "welch") {
                v = TTestVariant::Welch;
            } else {
                throw py::value_error("variant must be 'pooled' or 'welch'");
            }
            return two_sample_t(a, b, v, alpha);
        },
        py::arg("a"), py::arg("b"), py::arg("variant") = "pooled", py::arg("alpha") = 0.01);
}

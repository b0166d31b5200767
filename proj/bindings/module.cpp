#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "majscope/accel.hpp"
#include "majscope/encoding.hpp"
#include "majscope/lbdemo.hpp"
#include "majscope/oracle.hpp"

namespace py = pybind11;
using namespace majscope;

namespace {

Rational to_rational(std::pair<uint64_t, uint64_t> t) { return Rational{t.first, t.second}; }

py::list answer_to_list(const MajorityEncoding& e, const QueryAnswer& ans) {
    py::list out;
    for (const Hit& h : ans.hits) {
        py::list positions;
        for (uint64_t t = 1; t <= h.count; ++t) positions.append(e.report(h, t));
        py::dict d;
        d["pair_id"] = h.pair_id;
        d["count"] = h.count;
        d["positions"] = positions;
        out.append(d);
    }
    return out;
}

struct PyEncoding {
    MajorityEncoding enc;
    std::optional<PieceIndex> accel;

    py::list query(uint64_t i, uint64_t j, std::pair<uint64_t, uint64_t> tau_prime) const {
        return answer_to_list(enc, enc.query(i, j, to_rational(tau_prime)));
    }
    py::list query_fast(uint64_t i, uint64_t j, std::pair<uint64_t, uint64_t> tau_prime) const {
        if (!accel) throw std::runtime_error("encoding was built without the piece index");
        return answer_to_list(enc, majscope::query_fast(enc, *accel, i, j, to_rational(tau_prime)));
    }
    py::bytes serialize() const {
        std::vector<uint8_t> bytes =
            accel ? serialize_with_accel(enc, *accel) : enc.serialize();
        return py::bytes(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    }
    uint64_t size() const { return enc.size(); }
    std::pair<uint64_t, uint64_t> tau() const { return {enc.tau().num, enc.tau().den}; }
    size_t pair_count() const { return enc.pairs().size(); }
    uint64_t bit_size() const { return enc.bit_size(); }
    bool has_accel() const { return accel.has_value(); }
};

PyEncoding py_build(const std::vector<std::int64_t>& a, std::pair<uint64_t, uint64_t> tau,
                    bool accel) {
    PyEncoding out;
    CoalescedLayout layout;
    out.enc = MajorityEncoding::build_with_layout(a, to_rational(tau), layout);
    if (accel) out.accel = PieceIndex::build(out.enc, layout);
    return out;
}

PyEncoding py_load(py::bytes data) {
    std::string_view view = data;
    LoadedEncoding loaded =
        load_encoding({reinterpret_cast<const uint8_t*>(view.data()), view.size()});
    return PyEncoding{std::move(loaded.encoding), std::move(loaded.accel)};
}

}  // namespace

PYBIND11_MODULE(_majscope, m) {
    m.doc() = "encodings for range tau-majority queries";

    py::class_<PyEncoding>(m, "Encoding")
        .def("query", &PyEncoding::query, py::arg("i"), py::arg("j"), py::arg("tau_prime"),
             "distinct tau'-majorities of A[i,j] as dicts with pair_id, count, positions")
        .def("query_fast", &PyEncoding::query_fast, py::arg("i"), py::arg("j"),
             py::arg("tau_prime"))
        .def("serialize", &PyEncoding::serialize)
        .def("__len__", &PyEncoding::size)
        .def_property_readonly("tau", &PyEncoding::tau)
        .def_property_readonly("pair_count", &PyEncoding::pair_count)
        .def_property_readonly("bit_size", &PyEncoding::bit_size)
        .def_property_readonly("has_accel", &PyEncoding::has_accel);

    m.def("build", &py_build, py::arg("values"), py::arg("tau"), py::arg("accel") = false,
          "build an encoding from an integer array and an exact (num, den) threshold");
    m.def("load", &py_load, py::arg("data"), "deserialize an encoding stream");

    m.def(
        "oracle_query",
        [](const std::vector<std::int64_t>& a, uint64_t i, uint64_t j,
           std::pair<uint64_t, uint64_t> tau_prime) {
            py::list out;
            for (const auto& e : oracle_query(a, i, j, to_rational(tau_prime)).majorities) {
                py::dict d;
                d["value"] = e.value;
                d["count"] = e.count;
                d["positions"] = e.positions;
                out.append(d);
            }
            return out;
        },
        py::arg("values"), py::arg("i"), py::arg("j"), py::arg("tau_prime"),
        "brute-force reference answer");

    m.def(
        "encode_perms",
        [](const std::vector<std::vector<std::int64_t>>& perms) {
            PermutationCode c = encode_perms(perms);
            py::dict d;
            d["k"] = c.k;
            d["m"] = c.m;
            d["tau"] = std::make_pair(c.tau.num, c.tau.den);
            d["array"] = c.array;
            return d;
        },
        py::arg("perms"));

    m.def(
        "decode_perms",
        [](uint64_t k, uint64_t m, const std::function<uint64_t(uint64_t, uint64_t)>& counter) {
            return decode_perms(k, m, counter);
        },
        py::arg("k"), py::arg("m"), py::arg("counter"),
        "recover permutations through a counting-query callback");
}

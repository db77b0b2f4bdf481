#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "permcc/oracle.hpp"
#include "permcc/problem.hpp"

namespace py = pybind11;
using namespace permcc;

namespace {

// Owns every piece of a solved problem so the closure's references stay valid.
class Solver {
  public:
    explicit Solver(const std::string& text)
        : pf_(parse_problem(text)), th_(decompose(pf_.sig)) {
        res_ = run_fair_mu(pf_.axioms, pf_.sig, th_);
        cs_ = std::make_unique<ClosureSystem>(res_, pf_.sig, th_);
        for (const Equation& q : pf_.queries)
            answers_.push_back(cs_->decide_word(q.lhs, q.rhs) ? "EQUAL" : "NOT-EQUAL");
    }
    Solver(const Solver&) = delete;
    Solver& operator=(const Solver&) = delete;

    std::vector<std::string> answers() const { return answers_; }
    std::vector<std::string> d_rules() const { return format_drules(res_, pf_.sig); }
    std::vector<std::string> c_rules() const { return format_crules(res_); }
    std::vector<std::string> trace() const {
        std::vector<std::string> out;
        for (const TraceEvent& ev : res_.trace) out.push_back(ev.detail);
        return out;
    }
    int num_consts() const { return res_.num_consts; }
    size_t steps() const { return res_.steps; }

    std::string normalize(const std::string& term) const {
        return to_string(cs_->normalize(parse_term_text(term, pf_.sig)), pf_.sig);
    }
    bool decide(const std::string& s, const std::string& t) const {
        return cs_->decide_word(parse_term_text(s, pf_.sig), parse_term_text(t, pf_.sig));
    }

  private:
    ProblemFile pf_;
    PermTheory th_;
    EngineResult res_;
    std::unique_ptr<ClosureSystem> cs_;
    std::vector<std::string> answers_;
};

std::vector<std::string> oracle_answers(const std::string& text, size_t universe_cap) {
    ProblemFile pf = parse_problem(text);
    OracleCaps caps;
    caps.universe_cap = universe_cap;
    std::vector<TermPtr> queries;
    for (const Equation& q : pf.queries) {
        queries.push_back(q.lhs);
        queries.push_back(q.rhs);
    }
    OracleEngine oracle(pf.axioms, queries, pf.sig, caps);
    std::vector<std::string> out;
    for (const Equation& q : pf.queries)
        out.push_back(oracle.decide(q.lhs, q.rhs) ? "EQUAL" : "NOT-EQUAL");
    return out;
}

}  // namespace

PYBIND11_MODULE(_permcc, m) {
    m.doc() = "congruence closure of ground equations modulo permutation equations";

    py::register_exception<Error>(m, "PermccError");

    py::class_<Permutation>(m, "Permutation")
        .def(py::init([](const std::vector<int>& images) {
                 return Permutation::from_images(images);
             }),
             py::arg("images"), "build from the 1-based image list")
        .def_static("from_cycles", &Permutation::from_cycles, py::arg("degree"),
                    py::arg("cycles"))
        .def_static("identity", &Permutation::identity, py::arg("degree"))
        .def_property_readonly("degree", &Permutation::degree)
        .def_property_readonly("images", &Permutation::images_one_based)
        .def("compose", &Permutation::compose)
        .def("inverse", &Permutation::inverse)
        .def("act", &Permutation::act<std::string>, py::arg("values"))
        .def("act_ints", &Permutation::act<int>, py::arg("values"))
        .def("__eq__", [](const Permutation& a, const Permutation& b) { return a == b; })
        .def("__repr__", &Permutation::to_cycle_string);

    py::class_<PermGroup>(m, "PermGroup")
        .def_static("generate", &PermGroup::generate, py::arg("degree"), py::arg("generators"),
                    py::arg("cap") = 1'000'000)
        .def_static("trivial", &PermGroup::trivial, py::arg("degree"))
        .def_property_readonly("degree", &PermGroup::degree)
        .def_property_readonly("order", &PermGroup::order)
        .def("contains", &PermGroup::contains)
        .def("elements", &PermGroup::elements)
        .def("min_image",
             [](const PermGroup& g, const std::vector<int>& tup) {
                 return g.min_image(tup, [](int a, int b) { return a < b; });
             })
        .def("min_image_strs", [](const PermGroup& g, const std::vector<std::string>& tup) {
            return g.min_image(tup, [](const std::string& a, const std::string& b) { return a < b; });
        });

    py::class_<Solver>(m, "Solver")
        .def(py::init<const std::string&>(), py::arg("text"))
        .def_property_readonly("answers", &Solver::answers)
        .def_property_readonly("d_rules", &Solver::d_rules)
        .def_property_readonly("c_rules", &Solver::c_rules)
        .def_property_readonly("trace", &Solver::trace)
        .def_property_readonly("num_consts", &Solver::num_consts)
        .def_property_readonly("steps", &Solver::steps)
        .def("normalize", &Solver::normalize, py::arg("term"))
        .def("decide", &Solver::decide, py::arg("lhs"), py::arg("rhs"));

    m.def(
        "solve", [](const std::string& text) { return Solver(text).answers(); }, py::arg("text"),
        "parse, complete, and answer each query with EQUAL or NOT-EQUAL");
    m.def("oracle_answers", &oracle_answers, py::arg("text"), py::arg("universe_cap") = 20'000,
          "answer each query by the brute-force oracle");
}

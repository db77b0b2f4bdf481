#include <doctest.h>

#include <fstream>
#include <sstream>

#include "permcc/cli.hpp"
#include "permcc/oracle.hpp"
#include "permcc/problem.hpp"

using namespace permcc;

namespace {

std::string data_path(const std::string& name) {
    return std::string(PERMCC_TEST_DATA_DIR) + "/" + name;
}

std::string run(const std::vector<std::string>& args, int expect_code) {
    std::ostringstream out, err;
    int rc = run_cli(args, out, err);
    CHECK_MESSAGE(rc == expect_code, "stderr: ", err.str());
    return out.str();
}

}  // namespace

TEST_SUITE_BEGIN("problem");

TEST_CASE("permutation lines carry the shuffled right-hand side") {
    ProblemFile pf = parse_problem("sym f/8\nperm f : 2 1 3 4 5 6 7 8\n");
    const auto* gens = pf.sig.perm_generators(*pf.sig.find("f"));
    REQUIRE(gens);
    REQUIRE(gens->size() == 1);
    CHECK((*gens)[0].images_one_based() == std::vector<int>{2, 1, 3, 4, 5, 6, 7, 8});

    CHECK_THROWS_WITH_AS(parse_problem("sym f/3\nperm f : 1 1 2\n"),
                         doctest::Contains("NotABijection"), Error);
}

TEST_CASE("cycle form") {
    ProblemFile pf = parse_problem("sym f/4\npermcycle f : (1 2)(3 4)\n");
    const auto* gens = pf.sig.perm_generators(*pf.sig.find("f"));
    REQUIRE(gens);
    CHECK((*gens)[0].images_one_based() == std::vector<int>{2, 1, 4, 3});
}

TEST_CASE("parse errors carry a location") {
    CHECK_THROWS_WITH_AS(parse_problem("nonsense f/2\n"), doctest::Contains("line 1"), Error);
    CHECK_THROWS_WITH_AS(parse_problem("sym f/2\naxiom f(a) = a\n"),
                         doctest::Contains("line 2"), Error);
    CHECK_THROWS_WITH_AS(parse_problem("sym a/0\nsym f/2\naxiom f(a) = a\n"),
                         doctest::Contains("ArityMismatch"), Error);
    CHECK_THROWS_WITH_AS(parse_problem("sym a/0\naxiom a = b\n"),
                         doctest::Contains("UnknownSymbol"), Error);
}

TEST_CASE("theory declarations") {
    ProblemFile pf =
        parse_problem("sym z/0\nsym g/2\ntheory g NU zero=z\n");
    REQUIRE(pf.sig.b_theory());
    CHECK(pf.sig.b_theory()->tag == BTag::NU);
    CHECK(*pf.sig.b_theory()->zero == *pf.sig.find("z"));

    CHECK_THROWS_WITH_AS(parse_problem("sym g/2\ntheory g N\n"), doctest::Contains("zero"), Error);
    CHECK_THROWS_WITH_AS(parse_problem("sym z/0\nsym g/2\ntheory g I zero=z\n"),
                         doctest::Contains("zero"), Error);
    CHECK_THROWS_WITH_AS(parse_problem("sym g/2\nsym h/2\ntheory g I\ntheory h I\n"),
                         doctest::Contains("at most one"), Error);
    CHECK_THROWS_WITH_AS(parse_problem("sym g/3\ntheory g I\n"), doctest::Contains("binary"),
                         Error);
    CHECK_THROWS_WITH_AS(parse_problem("sym g/2\ntheory g X\n"), doctest::Contains("tag"), Error);
}

TEST_CASE("comments and blank lines") {
    ProblemFile pf = parse_problem(
        "# leading comment\n\nsym a/0   # trailing\nsym b/0\naxiom a = b  # done\n");
    CHECK(pf.sig.size() == 2);
    CHECK(pf.axioms.size() == 1);
}

TEST_CASE("empty problem solves to nothing") {
    ProblemFile pf = parse_problem("");
    SolveOutput out = solve_problem(pf);
    CHECK(out.answers.empty());
    CHECK(out.result.num_consts == 0);
}

TEST_CASE("an axiom decides its own query") {
    SolveOutput out = solve_problem(parse_problem(
        "sym a/0\nsym b/0\nsym h/1\nsym f/2\nsym g/3\n"
        "perm f : 2 1\nperm g : 2 1 3\n"
        "axiom f(b, g(b, a, a)) = h(a)\n"
        "query f(b, g(b, a, a)) = h(a)\n"
        "query f(g(b, a, a), b) = h(a)\n"
        "query h(b) = h(a)\n"));
    CHECK(out.answers == std::vector<bool>{true, true, false});
}

TEST_CASE("solve command output and exit codes") {
    std::string out = run({"solve", data_path("board.pcc")}, 0);
    CHECK(out == "EQUAL\nEQUAL\nNOT-EQUAL\n");

    // byte-identical across runs, flags included
    std::string dump1 = run({"solve", data_path("board.pcc"), "--dump-rules", "--trace"}, 0);
    std::string dump2 = run({"solve", data_path("board.pcc"), "--dump-rules", "--trace"}, 0);
    CHECK(dump1 == dump2);

    {
        std::ostringstream o, e;
        CHECK(run_cli({"solve", data_path("missing.pcc")}, o, e) == 1);
        CHECK(e.str().find("cannot open") != std::string::npos);
    }
    {
        std::ostringstream o, e;
        CHECK(run_cli({"solve", data_path("board.pcc"), "--cap-steps", "3"}, o, e) == 2);
        CHECK(e.str().find("ResourceCap") != std::string::npos);
    }
}

TEST_CASE("empty file through the CLI") {
    std::string path = data_path("empty_generated.pcc");
    std::ofstream(path) << "";
    CHECK(run({"solve", path}, 0).empty());
}

TEST_CASE("dumped rules re-parse as axioms deciding the same queries") {
    std::string text;
    {
        std::ifstream in(data_path("board.pcc"));
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    ProblemFile pf = parse_problem(text);
    SolveOutput solved = solve_problem(pf);

    std::ostringstream rebuilt;
    rebuilt << "sym T/0\nsym F/0\nsym bot/0\nsym f/8\nsym h/1\nsym g/2\n"
            << "perm f : 2 1 3 4 5 6 7 8\nperm f : 2 3 4 1 5 6 7 8\n"
            << "perm f : 1 2 3 4 6 5 7 8\nperm f : 1 2 3 4 5 6 8 7\n"
            << "theory g I\n";
    for (int c = 0; c < solved.result.num_consts; ++c)
        rebuilt << "sym c" << c << "/0\n";
    for (const std::string& line : format_drules(solved.result, pf.sig)) {
        std::string eq = line;
        eq.replace(eq.find(" -> "), 4, " = ");
        rebuilt << "axiom " << eq << "\n";
    }
    for (const std::string& line : format_crules(solved.result)) {
        std::string eq = line;
        eq.replace(eq.find(" -> "), 4, " = ");
        rebuilt << "axiom " << eq << "\n";
    }
    rebuilt << "query h(h(h(h(f(F,F,F,F,F,F,F,F))))) = bot\n"
            << "query f(T,F,F,F,F,F,F,T) = bot\n"
            << "query h(h(f(F,F,T,T,F,T,F,T))) = bot\n";

    SolveOutput again = solve_problem(parse_problem(rebuilt.str()));
    CHECK(again.answers == solved.answers);
}

TEST_CASE("oracle command cross-checks the solver") {
    std::string path = data_path("mini_generated.pcc");
    std::ofstream(path) << "sym T/0\nsym F/0\nsym bot/0\nsym f/4\nsym h/1\n"
                           "perm f : 2 1 3 4\nperm f : 1 2 4 3\n"
                           "axiom f(T,T,T,T) = bot\n"
                           "axiom h(f(F,F,F,F)) = f(F,T,T,F)\n"
                           "query h(f(F,F,F,F)) = f(T,F,F,T)\n"
                           "query f(F,F,F,F) = bot\n";
    CHECK(run({"oracle", path}, 0) == "EQUAL\nNOT-EQUAL\n");
    CHECK(run({"oracle", path, "--cross-check"}, 0) == "AGREE EQUAL\nAGREE NOT-EQUAL\n");
}

TEST_CASE("bench output shape and determinism") {
    std::string out1 = run({"bench", "--sizes", "30,60", "--seed", "7"}, 0);
    std::string out2 = run({"bench", "--sizes", "30,60", "--seed", "7"}, 0);

    auto strip_times = [](const std::string& s) {
        std::istringstream in(s);
        std::string line, kept;
        while (std::getline(in, line)) {
            if (line.rfind("slope time_ms", 0) == 0) continue;
            std::istringstream ls(line);
            std::string n, tl;
            ls >> n >> tl;
            kept += n + " " + tl + "\n";
        }
        return kept;
    };
    CHECK(strip_times(out1) == strip_times(out2));
    CHECK(out1.find("slope trace_len") != std::string::npos);
    CHECK(out1.rfind("n trace_len time_ms", 0) == 0);
}

TEST_CASE("bench size zero runs an empty derivation") {
    std::string out = run({"bench", "--sizes", "0", "--seed", "3"}, 0);
    CHECK(out.find("\n0 0 ") != std::string::npos);
}

TEST_SUITE_END();

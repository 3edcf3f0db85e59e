#include "doctest.h"
#include "tenstab/jobspec.hpp"

using namespace tenstab;

TEST_CASE("jobspec parsing: valid jobs and common errors") {
    JobSpec j1 = parse_jobspec("ring Z; module A rel [[5]]; cmd stabilize A Z");
    CHECK(j1.command == "stabilize");
    CHECK(j1.args == std::vector<std::string>{"A", "Z"});
    CHECK(!j1.ring.modular());

    JobSpec j2 = parse_jobspec("ring Z/4\nmodule A rel [[2]]\ncmd asymptotic A A n=0");
    CHECK(j2.ring.modulus == 4);
    CHECK(j2.params.at("n") == 0);

    CHECK_THROWS_AS(parse_jobspec("ring Z/1; module A rel [[1]]; cmd tor A A"), ParseError);
    CHECK_THROWS_AS(parse_jobspec("ring Z; cmd stabilize A Z"), ParseError);          // unknown name
    CHECK_THROWS_AS(parse_jobspec("ring Z; module A rel [[2,],]; cmd tor A A"), ParseError);
    CHECK_THROWS_AS(parse_jobspec("ring Z; module A rel [[1,2],[3]]; cmd tor A A"), ParseError);
    CHECK_THROWS_AS(parse_jobspec("ring Z; module A rel [[2]]"), ParseError);          // no command
    CHECK_THROWS_AS(parse_jobspec("ring Z; module A rel [[2]]; cmd frobnicate A"), ParseError);
    // comments and free modules
    JobSpec j3 = parse_jobspec("# header\nring Z/9; module F free 2; cmd tor F F n=1");
    CHECK(j3.modules.at("F").gens == 2);
}

TEST_CASE("jobspec runs: reference computations") {
    Report r1 = run(parse_jobspec("ring Z; module A rel [[5]]; cmd stabilize A Z"));
    CHECK(r1.ok);
    CHECK(r1.machine.find("stabilized = Z/5") != std::string::npos);

    Report r2 = run(parse_jobspec("ring Z; module A rel [[5]]; cmd asymptotic A Z n=0"));
    CHECK(r2.ok);
    CHECK(r2.machine.find("limit = 0") != std::string::npos);
    CHECK(r2.machine.find("StabilizedAt(1)") != std::string::npos);

    Report r3 = run(parse_jobspec("ring Z/4; module A rel [[2]]; cmd asymptotic A A n=0"));
    CHECK(r3.ok);
    CHECK(r3.machine.find("limit = Z/2") != std::string::npos);

    Report r4 = run(parse_jobspec("ring Z/4; module A rel [[2]]; cmd verify-all A A n=0"));
    CHECK(r4.ok);

    Report r5 = run(parse_jobspec("ring Z/4; cmd verify-cubes count=5 seed=1"));
    CHECK(r5.ok);
    CHECK(r5.machine.find("cubes = 5/5") != std::string::npos);

    Report r6 = run(parse_jobspec(
        "ring Z/4; module A rel [[2]]; cmd vogel-roundtrip A A n=0 horizon=9 seed=2 count=2"));
    CHECK(r6.ok);
    CHECK(r6.machine.find("roundtrip = 2/2") != std::string::npos);

    // omega on the non-split extension
    Report r7 = run(parse_jobspec(
        "ring Z/4; module A rel [[2]]; module M free 1; "
        "map f A M [[2]]; map g M A [[1]]; cmd omega A f g n=1 horizon=5"));
    CHECK(r7.ok);
    CHECK(r7.machine.find("rho.agrees = yes") != std::string::npos);
}

TEST_CASE("machine reports are reproducible") {
    const char* text = "ring Z/4; cmd verify-cubes count=4 seed=7";
    Report a = run(parse_jobspec(text));
    Report b = run(parse_jobspec(text));
    CHECK(a.machine == b.machine);
    CHECK(a.machine.find("truncation = none") != std::string::npos);
}

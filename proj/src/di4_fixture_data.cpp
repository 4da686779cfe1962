// Generated by `mrt di4-oracle --precision 24 --out data/di4_fixture.txt`;
// do not edit by hand. The verification transcript lives next to the fixture
// in data/di4_fixture_verification.txt. MRT_FIXTURE_DIR overrides this
// embedded copy at runtime.

namespace mrt {

const char* kDi4FixtureText =
    "di4-fixture precision 24\n"
    "matrix\n"
    "0 1 0\n"
    "2502701 9639958 7137257\n"
    "2502701 9639958 12142660\n"
    "matrix\n"
    "14274515 7137258 4634556\n"
    "0 16777215 0\n"
    "5005402 2502701 2502701\n"
    "matrix\n"
    "16777215 0 0\n"
    "0 16777215 0\n"
    "0 0 16777215\n";

}  // namespace mrt

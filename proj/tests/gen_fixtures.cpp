// Writes the frozen test fixtures: the fixture chain, its governance
// config, and the golden commentary encoding. Run once from the build
// tree; the outputs are committed, and the suite asserts that rebuilding
// reproduces them byte for byte.

#include <filesystem>
#include <fstream>
#include <iostream>

#include "fixture_ledger.hpp"
#include "scholia/canonical.hpp"
#include "scholia/events.hpp"
#include "scholia/hash.hpp"

using namespace scholia;

namespace {

// The golden commentary pins the canonical encoding of every body field,
// including an optional magnitude in one claim and none in the other.
CommentaryEvent golden_commentary() {
  Claim with_magnitude;
  with_magnitude.subject = "grazing";
  with_magnitude.predicate = "limits-algae";
  with_magnitude.direction = "negative";
  with_magnitude.magnitude = 0.25;
  with_magnitude.dataset_class = "reef-2020";
  with_magnitude.method_class = "field-experiment";

  Claim without_magnitude = with_magnitude;
  without_magnitude.subject = "herbivore-density";
  without_magnitude.magnitude.reset();

  CommentaryEvent body;
  body.target = hash_content("golden target artifact");
  body.modality = "criticism";
  body.claims = {with_magnitude, without_magnitude};
  body.text_hash = hash_content("golden commentary text");
  body.tau = 1234567890;
  return body;
}

}  // namespace

int main(int argc, char** argv) {
  std::filesystem::path dir = argc > 1 ? argv[1] : SCHOLIA_FIXTURE_DIR;
  std::filesystem::create_directories(dir);

  testutil::Fixture fixture = testutil::build_fixture();
  fixture.ledger.save(dir / "chain.jsonl");
  save_config(fixture.config, dir / "config.json");

  std::ofstream golden(dir / "commentary_golden.txt", std::ios::binary);
  golden << canonical_encode(body_to_json(golden_commentary())) << "\n";
  if (!golden.good()) {
    std::cerr << "failed writing " << (dir / "commentary_golden.txt") << "\n";
    return 1;
  }

  std::cout << "wrote " << fixture.ledger.size() << " events and fixtures to " << dir << "\n";
  return 0;
}

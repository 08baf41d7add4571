#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "scholia/identity.hpp"
#include "scholia/ledger.hpp"
#include "scholia/state.hpp"

namespace testutil {

// Deterministic ledger exercising every event type: five seeded identities
// (alice, bob, carol, dave, erin; dave holds an editor-role attestation),
// nine artifacts, three citations, a commentary thread with endorsements,
// a derivation, and an error flag, six replications of mixed congruence,
// three null results on one hypothesis, a cross-domain transfer, three
// retractions (voluntary, responsive, editorial), and a two-version
// lineage. Every timestamp is fixed, every keypair is seeded, and ed25519
// signing is deterministic, so rebuilding yields byte-identical lines.
struct Fixture {
  scholia::Ledger ledger;
  scholia::GovernanceConfig config;
  scholia::LedgerState state;  // replay of `ledger`

  std::map<std::string, scholia::SecretKey> keys;    // secret keys by actor name
  std::map<std::string, scholia::ContentHash> ids;   // identity key ids by actor name
  // Artifact hashes by label (A1, D1, B1, B2, B3, C1, A2, C2, B1b) and
  // event ids of commentaries/transfers by label (R1, endorse-R1, R2,
  // endorse-R2, R3, endorse-R3, endorse-C1-bob, endorse-C1-dave,
  // derive-C1, flag-C1, transfer-D1).
  std::map<std::string, scholia::ContentHash> names;

  std::int64_t end_time = 0;  // strictly after every event and tau
};

// Governance weights the hand-computed fixture scores assume: defaults
// except reputation_beta 0.5, dampening_lambda 0.5, impact_beta_null 2.0,
// and a 100-second epoch.
scholia::GovernanceConfig fixture_config();

// Builds the fixture, validating every event against the projected state
// before accepting it; throws if any event the script appends would be
// rejected by the ledger's own rules.
Fixture build_fixture();

}  // namespace testutil

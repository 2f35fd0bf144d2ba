// Bundled manifest of worked examples from the literature on Chatelet
// surfaces. Each entry encodes one construction or lemma as executable
// checks; the verify-paper CLI subcommand and the acceptance suite run them.

#ifndef CHATELET_MANIFEST_HPP
#define CHATELET_MANIFEST_HPP

#include <functional>
#include <string>
#include <vector>

namespace chatelet {

struct CheckOutcome {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ManifestEntry {
  std::string id;
  std::string ref;  // literature anchor, e.g. "Ex. 3.2"
  std::string description;
  std::function<std::vector<CheckOutcome>()> run;
};

const std::vector<ManifestEntry>& example_manifest();

// Entries whose id equals the query or ends with it ("7.4" matches
// "example-7.4"); "all" selects everything.
std::vector<const ManifestEntry*> select_entries(const std::string& query);

}  // namespace chatelet

#endif

#ifndef FIBPOW_CERTS_HPP
#define FIBPOW_CERTS_HPP

// JSON-lines certificates: append-only records that a later `verify`
// pass can re-check offline without re-running any search. Big integers
// travel as hex strings; volatile fields (elapsed_ms) stay out of the
// payload hash.

#include <json.hpp>

#include <string>
#include <vector>

#include "fibpow/kraus.hpp"
#include "fibpow/powertest.hpp"
#include "fibpow/sieve.hpp"

namespace fibpow {

using ordered_json = nlohmann::ordered_json;

// FNV-1a over the canonical payload serialization.
std::string payload_hash(const ordered_json& payload);

ordered_json witness_record(const PowerWitness& w, long elapsed_ms = -1);
ordered_json kraus_record(const KrausCertificate& c, long elapsed_ms = -1);
ordered_json sieve_record(const SieveSession& s, long elapsed_ms = -1);

struct VerifyOutcome {
    size_t records = 0;
    std::vector<std::pair<size_t, std::string>> failures; // line index, reason
    bool ok() const { return failures.empty(); }
};

// Re-checks every record in a JSON-lines certificate file.
VerifyOutcome verify_certificate_file(const std::string& path);

// Single-record re-check; returns empty string on success.
std::string verify_record(const ordered_json& rec);

void append_records(const std::string& path, const std::vector<ordered_json>& recs);

} // namespace fibpow

#endif

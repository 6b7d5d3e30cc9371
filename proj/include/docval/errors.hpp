#pragma once

#include <stdexcept>
#include <string>

namespace docval {

// Every failure mode in the library maps to one of these codes. Tests and the
// CLI switch on the code; the message carries the human-readable detail.
enum class Errc {
  duplicate_member,
  too_many_members,
  empty_members,
  index_out_of_range,
  backend_unavailable,
  score_parse_error,
  missing_table_entry,
  dimension_mismatch,
  all_zero_similarity,
  schema_error,
  malformed_response,
  game_too_large,
  not_a_partition,
  zero_norm,
  iteration_limit_exceeded,
  singular_system,
  infeasible_target,
  zero_weight_sum,
  nonpositive_total_value,
  empty_input,
  empty_sampler,
  member_mismatch,
  truth_unavailable,
  incomplete_table,
  insufficient_replicates,
  empty_corpus,
  io_error,
  invalid_argument,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace docval

#include "docval/errors.hpp"

namespace docval {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::duplicate_member: return "DuplicateMember";
    case Errc::too_many_members: return "TooManyMembers";
    case Errc::empty_members: return "EmptyMembers";
    case Errc::index_out_of_range: return "IndexOutOfRange";
    case Errc::backend_unavailable: return "BackendUnavailable";
    case Errc::score_parse_error: return "ScoreParseError";
    case Errc::missing_table_entry: return "MissingTableEntry";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::all_zero_similarity: return "AllZeroSimilarity";
    case Errc::schema_error: return "SchemaError";
    case Errc::malformed_response: return "MalformedResponse";
    case Errc::game_too_large: return "GameTooLarge";
    case Errc::not_a_partition: return "NotAPartition";
    case Errc::zero_norm: return "ZeroNorm";
    case Errc::iteration_limit_exceeded: return "IterationLimitExceeded";
    case Errc::singular_system: return "SingularSystem";
    case Errc::infeasible_target: return "InfeasibleTarget";
    case Errc::zero_weight_sum: return "ZeroWeightSum";
    case Errc::nonpositive_total_value: return "NonpositiveTotalValue";
    case Errc::empty_input: return "EmptyInput";
    case Errc::empty_sampler: return "EmptySampler";
    case Errc::member_mismatch: return "MemberMismatch";
    case Errc::truth_unavailable: return "TruthUnavailable";
    case Errc::incomplete_table: return "IncompleteTable";
    case Errc::insufficient_replicates: return "InsufficientReplicates";
    case Errc::empty_corpus: return "EmptyCorpus";
    case Errc::io_error: return "IoError";
    case Errc::invalid_argument: return "InvalidArgument";
  }
  return "UnknownError";
}

}  // namespace docval

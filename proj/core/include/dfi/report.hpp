#pragma once

#include <string>

#include <json.hpp>

#include "dfi/search.hpp"

namespace dfi {

using Json = nlohmann::ordered_json;

// JSON building blocks. All numeric payloads are exact strings: rationals
// as "p/q", interval endpoints as dyadic rationals. No floats, no clocks —
// identical inputs give byte-identical output.
Json rational_json(const BigRational& q);
Json element_json(const FieldElement& x);
Json point_json(const Point& x);
Json interval_json(const LogInterval& iv);
Json class_json(const PointClass& cls);

// One JSON object per line: a header record, then one record per class,
// then records for any borderline points.
std::string solution_jsonl(const SolutionReport& r, const std::string& command);
std::string profile_jsonl(const std::vector<ProfileRow>& rows);
std::string cover_jsonl(const SubspaceCover& cover,
                        const std::vector<Point>& points);
std::string sequence_jsonl(const std::vector<SequenceRow>& rows);

// Human-readable tables.
std::string solution_table(const SolutionReport& r);
std::string profile_table(const std::vector<ProfileRow>& rows);
std::string cover_table(const SubspaceCover& cover,
                        const std::vector<Point>& points);
std::string sequence_table(const std::vector<SequenceRow>& rows);

std::string point_str(const Point& x);

}  // namespace dfi

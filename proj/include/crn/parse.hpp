#pragma once

#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include <json.hpp>

#include "crn/network.hpp"

namespace crn {

enum class ParseErrorKind {
  BadToken,
  NegativeCoefficient,
  MissingRate,
  DuplicateSpeciesDecl,
  SelfLoop,
  UndeclaredSpecies,
  OrphanSpecies,
  NonPositiveRate,
  EmptyNetwork,
};

std::string_view to_string(ParseErrorKind kind);

// line and column are 1-based; column may be one past the end of the line.
class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& message);
  ParseErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_, column_;
};

struct NetworkDocument {
  Network network;
  std::string source_name;
  std::map<std::string, std::string> metadata;
};

NetworkDocument parse_text(std::string_view source, std::string source_name = "<input>");
NetworkDocument parse_file(const std::string& path);

std::string format_network(const NetworkDocument& doc);
std::string format_network(const Network& net);

// Shortest decimal that reads back to the same double.
std::string format_double(double v);

nlohmann::ordered_json to_json(const NetworkDocument& doc);
NetworkDocument document_from_json(const nlohmann::json& j);

}  // namespace crn

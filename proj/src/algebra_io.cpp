#include "ucaw/algebra_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ucaw/error.hpp"

namespace ucaw {

using nlohmann::json;

namespace {

std::string position_string(const std::vector<std::size_t>& pos) {
  std::string out;
  for (auto p : pos) out += "[" + std::to_string(p) + "]";
  return out.empty() ? "[]" : out;
}

void read_table(const json& node, std::size_t depth, std::size_t size,
                const std::string& symbol, std::vector<std::size_t>& pos,
                Table& out) {
  if (depth == 0) {
    if (!node.is_number_integer())
      throw ParseError("operation '" + symbol + "': expected an integer at " +
                       position_string(pos));
    const auto value = node.get<std::int64_t>();
    if (value < 0 || static_cast<std::uint64_t>(value) >= size)
      throw ParseError("operation '" + symbol + "': entry " +
                       std::to_string(value) + " at " + position_string(pos) +
                       " out of range for size " + std::to_string(size));
    out.push_back(static_cast<Element>(value));
    return;
  }
  if (!node.is_array())
    throw ParseError("operation '" + symbol + "': expected a list at " +
                     position_string(pos));
  if (node.size() != size)
    throw ParseError("operation '" + symbol + "': list at " +
                     position_string(pos) + " has length " +
                     std::to_string(node.size()) + ", expected " +
                     std::to_string(size));
  for (std::size_t i = 0; i < node.size(); ++i) {
    pos.push_back(i);
    read_table(node[i], depth - 1, size, symbol, pos, out);
    pos.pop_back();
  }
}

void write_table(std::span<const Element> table, std::size_t arity,
                 std::size_t size, std::string& out) {
  if (arity == 0) {
    out += std::to_string(table[0]);
    return;
  }
  const std::size_t stride = table.size() / size;
  out += '[';
  for (std::size_t i = 0; i < size; ++i) {
    if (i) out += ", ";
    write_table(table.subspan(i * stride, stride), arity - 1, size, out);
  }
  out += ']';
}

}  // namespace

FiniteAlgebra parse_algebra(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("algebra file: malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("algebra file: expected an object");

  std::string name;
  if (auto it = doc.find("name"); it != doc.end()) {
    if (!it->is_string()) throw ParseError("algebra file: \"name\" must be a string");
    name = it->get<std::string>();
  }
  auto size_it = doc.find("size");
  if (size_it == doc.end() || !size_it->is_number_integer() ||
      size_it->get<std::int64_t>() < 1)
    throw ParseError("algebra file: \"size\" must be an integer >= 1");
  const auto size = static_cast<std::size_t>(size_it->get<std::int64_t>());

  auto ops_it = doc.find("operations");
  if (ops_it == doc.end() || !ops_it->is_array())
    throw ParseError("algebra file: \"operations\" must be a list");

  std::vector<OperationSymbol> symbols;
  std::vector<Table> tables;
  for (std::size_t i = 0; i < ops_it->size(); ++i) {
    const json& op = (*ops_it)[i];
    const std::string where = "operation #" + std::to_string(i);
    if (!op.is_object()) throw ParseError(where + ": expected an object");
    if (!op.contains("symbol") || !op["symbol"].is_string() ||
        op["symbol"].get<std::string>().empty())
      throw ParseError(where + ": \"symbol\" must be a non-empty string");
    const auto symbol = op["symbol"].get<std::string>();
    for (const auto& s : symbols)
      if (s.name == symbol)
        throw ParseError("operation '" + symbol + "': duplicate symbol name");
    if (!op.contains("arity") || !op["arity"].is_number_integer() ||
        op["arity"].get<std::int64_t>() < 0)
      throw ParseError("operation '" + symbol +
                       "': \"arity\" must be an integer >= 0");
    const auto arity = static_cast<std::size_t>(op["arity"].get<std::int64_t>());
    if (!op.contains("table"))
      throw ParseError("operation '" + symbol + "': missing \"table\"");
    if (!checked_power(size, arity) ||
        *checked_power(size, arity) > (std::uint64_t{1} << 32))
      throw ParseError("operation '" + symbol + "': table too large");
    Table table;
    std::vector<std::size_t> pos;
    read_table(op["table"], arity, size, symbol, pos, table);
    symbols.push_back({symbol, arity});
    tables.push_back(std::move(table));
  }
  return FiniteAlgebra(std::move(name), size, Signature(std::move(symbols)),
                       std::move(tables));
}

std::string serialize_algebra(const FiniteAlgebra& alg) {
  std::string out = "{\n";
  if (!alg.name().empty())
    out += "  \"name\": " + json(alg.name()).dump() + ",\n";
  out += "  \"size\": " + std::to_string(alg.size()) + ",\n";
  out += "  \"operations\": [";
  const auto& sig = alg.signature();
  for (std::size_t op = 0; op < sig.size(); ++op) {
    out += op ? ",\n    " : "\n    ";
    out += "{\"symbol\": " + json(sig[op].name).dump() +
           ", \"arity\": " + std::to_string(sig[op].arity) + ", \"table\": ";
    write_table(alg.table(op), sig[op].arity, alg.size(), out);
    out += "}";
  }
  out += sig.size() ? "\n  ]\n}\n" : "]\n}\n";
  return out;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

FiniteAlgebra load_algebra(const std::filesystem::path& path) {
  try {
    return parse_algebra(read_text_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

}  // namespace ucaw

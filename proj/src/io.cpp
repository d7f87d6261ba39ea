#include "covertbc/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace covertbc {

namespace {

using nlohmann::json;

Channel channel_from_json(const json& rows, const char* field, std::size_t expect_inputs) {
  if (!rows.is_array() || rows.empty())
    throw ParseError("cli", "load_spec_file", std::string(field) + " must be a matrix");
  std::vector<std::vector<double>> matrix;
  for (const auto& row : rows) {
    if (!row.is_array())
      throw ParseError("cli", "load_spec_file", std::string(field) + " must be a matrix");
    matrix.push_back(row.get<std::vector<double>>());
  }
  if (expect_inputs != 0 && matrix.size() != expect_inputs)
    throw ParseError("cli", "load_spec_file",
                     std::string(field) + " has " + std::to_string(matrix.size()) +
                         " rows, expected " + std::to_string(expect_inputs));
  try {
    return validate_channel(matrix);
  } catch (const Error& e) {
    throw ParseError("cli", "load_spec_file", std::string(field) + ": " + e.what());
  }
}

}  // namespace

LoadedSpec load_spec_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cli", "load_spec_file", "cannot open " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw ParseError("cli", "load_spec_file", path + ": " + e.what());
  }

  LoadedSpec spec;
  if (doc.contains("sigma2")) {
    spec.kind = LoadedSpec::Kind::Gaussian;
    if (!doc.contains("n1") || !doc.contains("n2"))
      throw ParseError("cli", "load_spec_file", "gaussian spec needs n1, n2, sigma2");
    spec.gauss = make_gaussian_spec(doc["n1"].get<double>(), doc["n2"].get<double>(),
                                    doc["sigma2"].get<double>());
    return spec;
  }

  if (!doc.contains("w") || !doc.contains("warden"))
    throw ParseError("cli", "load_spec_file", "channel spec needs w and warden matrices");
  std::size_t inputs = doc.contains("inputs") ? doc["inputs"].get<std::size_t>() : 0;
  spec.w = channel_from_json(doc["w"], "w", inputs);
  spec.warden = channel_from_json(doc["warden"], "warden", inputs);
  if (doc.contains("v")) spec.v = channel_from_json(doc["v"], "v", inputs);
  if (spec.w.num_inputs() != spec.warden.num_inputs() ||
      (spec.v && spec.v->num_inputs() != spec.w.num_inputs()))
    throw ParseError("cli", "load_spec_file", "channels disagree on the number of inputs");
  return spec;
}

BroadcastSpec to_broadcast_spec(const LoadedSpec& loaded) {
  if (loaded.kind != LoadedSpec::Kind::Dmc || !loaded.v)
    throw ParseError("cli", "to_broadcast_spec", "spec file lacks the v channel");
  return make_broadcast_spec(loaded.w, *loaded.v, loaded.warden);
}

std::string format_double(double value) {
  char buffer[64];
  auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  (void)ec;
  return std::string(buffer, end);
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cli", "write_text_file", "cannot open " + path + " for writing");
  out << contents;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cli", "read_text_file", "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace covertbc

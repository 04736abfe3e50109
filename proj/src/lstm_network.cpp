#include "seqcast/lstm_network.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "seqcast/atomic_file.hpp"

namespace seqcast {
namespace {

constexpr std::uint32_t kBlockCount = 10;
constexpr std::uint32_t kMaxVariableName = 64;

void put_u32(std::ostream& out, std::uint32_t v) {
  char bytes[4];
  for (int k = 0; k < 4; ++k) bytes[k] = static_cast<char>((v >> (8 * k)) & 0xFFu);
  out.write(bytes, 4);
}

void put_f64(std::ostream& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  char bytes[8];
  for (int k = 0; k < 8; ++k) bytes[k] = static_cast<char>((bits >> (8 * k)) & 0xFFu);
  out.write(bytes, 8);
}

std::uint32_t checked_u32(Index v, const char* what) {
  if (v < 0 || v > static_cast<Index>(UINT32_MAX)) {
    throw PreconditionError(std::string("write_model: ") + what + " out of range");
  }
  return static_cast<std::uint32_t>(v);
}

class Reader {
 public:
  explicit Reader(std::string bytes) : bytes_(std::move(bytes)) {}

  void take(void* dst, std::size_t n, const char* what) {
    if (bytes_.size() - pos_ < n) {
      throw MalformedModelError(std::string("model file truncated while reading ") + what);
    }
    std::memcpy(dst, bytes_.data() + pos_, n);
    pos_ += n;
  }

  std::uint32_t u32(const char* what) {
    unsigned char b[4];
    take(b, 4, what);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
  }

  double f64(const char* what) {
    unsigned char b[8];
    take(b, 8, what);
    std::uint64_t bits = 0;
    for (int k = 7; k >= 0; --k) bits = (bits << 8) | b[k];
    return std::bit_cast<double>(bits);
  }

  bool at_end() const { return pos_ == bytes_.size(); }

 private:
  std::string bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

void write_model(std::ostream& out, const SavedModel& model) {
  const auto& p = model.parameters;
  p.validate();
  model.normalization.validate();
  if (model.variable.empty() || model.variable.size() > kMaxVariableName) {
    throw PreconditionError("write_model: variable name must be 1..64 bytes");
  }
  if (model.window < 1) throw PreconditionError("write_model: window must be >= 1");

  out.write(kModelMagic, sizeof(kModelMagic));
  put_u32(out, kModelFormatVersion);
  put_u32(out, checked_u32(p.input_dim(), "input_dim"));
  put_u32(out, checked_u32(p.hidden_dim(), "hidden_dim"));
  put_u32(out, checked_u32(model.window, "window"));
  put_u32(out, static_cast<std::uint32_t>(model.variable.size()));
  out.write(model.variable.data(), static_cast<std::streamsize>(model.variable.size()));
  put_f64(out, model.normalization.min);
  put_f64(out, model.normalization.max);
  put_f64(out, model.normalization.lo);
  put_f64(out, model.normalization.hi);
  put_u32(out, kBlockCount);
  for_each_tensor(
      [&](const auto& t) {
        put_u32(out, checked_u32(t.rows(), "rows"));
        put_u32(out, checked_u32(t.cols(), "cols"));
        // Vectors are column vectors in memory; both layouts serialize as
        // data() order, which is row-major for the weight matrices.
        for (Index k = 0; k < t.size(); ++k) put_f64(out, t.data()[k]);
      },
      p);
  if (!out) throw std::runtime_error("write_model: stream error");
}

SavedModel read_model(std::istream& in) {
  Reader r{std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>())};

  char magic[sizeof(kModelMagic)];
  r.take(magic, sizeof(magic), "magic");
  if (std::memcmp(magic, kModelMagic, sizeof(magic)) != 0) {
    throw MalformedModelError("not a model file (bad magic)");
  }
  const std::uint32_t version = r.u32("format version");
  if (version != kModelFormatVersion) {
    throw VersionMismatchError("model format version " + std::to_string(version) +
                               " is not supported (expected " +
                               std::to_string(kModelFormatVersion) + ")");
  }

  const std::uint32_t input_dim = r.u32("input_dim");
  const std::uint32_t hidden_dim = r.u32("hidden_dim");
  const std::uint32_t window = r.u32("window");
  if (input_dim < 1 || hidden_dim < 1 || window < 1) {
    throw ShapeInconsistencyError("model header declares a zero dimension");
  }
  const std::uint32_t name_len = r.u32("variable name length");
  if (name_len < 1 || name_len > kMaxVariableName) {
    throw MalformedModelError("model variable name length out of range");
  }

  SavedModel model;
  model.window = window;
  model.variable.resize(name_len);
  r.take(model.variable.data(), name_len, "variable name");
  model.normalization.min = r.f64("normalization min");
  model.normalization.max = r.f64("normalization max");
  model.normalization.lo = r.f64("normalization lo");
  model.normalization.hi = r.f64("normalization hi");
  try {
    model.normalization.validate();
  } catch (const PreconditionError& e) {
    throw MalformedModelError(std::string("model normalization invalid: ") + e.what());
  }

  const std::uint32_t blocks = r.u32("block count");
  if (blocks != kBlockCount) {
    throw ShapeInconsistencyError("model declares " + std::to_string(blocks) +
                                  " parameter blocks, expected " + std::to_string(kBlockCount));
  }

  model.parameters = NetworkParameters<double>::zeros(input_dim, hidden_dim);
  int block = 0;
  for_each_tensor(
      [&](auto& t) {
        const std::uint32_t rows = r.u32("block rows");
        const std::uint32_t cols = r.u32("block cols");
        if (rows != t.rows() || cols != t.cols()) {
          throw ShapeInconsistencyError(
              "parameter block " + std::to_string(block) + " is " + std::to_string(rows) + "x" +
              std::to_string(cols) + " but the header implies " + std::to_string(t.rows()) + "x" +
              std::to_string(t.cols()));
        }
        for (Index k = 0; k < t.size(); ++k) {
          const double v = r.f64("parameter values");
          if (!std::isfinite(v)) throw MalformedModelError("non-finite parameter value");
          t.data()[k] = v;
        }
        ++block;
      },
      model.parameters);

  if (!r.at_end()) throw MalformedModelError("trailing bytes after model payload");
  return model;
}

void save_model(const SavedModel& model, const std::filesystem::path& destination) {
  std::ostringstream buffer(std::ios::binary);
  write_model(buffer, model);
  write_file_atomically(destination, buffer.str());
}

SavedModel load_model(const std::filesystem::path& source) {
  std::ifstream in(source, std::ios::binary);
  if (!in) throw DataError("cannot open model file " + source.string());
  return read_model(in);
}

}  // namespace seqcast

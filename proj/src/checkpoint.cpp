/* Copyright 2026 The acgan Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "acgan/checkpoint.hpp"

#include <bit>
#include <cstring>

#include "acgan/error.hpp"
#include "acgan/io.hpp"

namespace acgan {
namespace {

constexpr char kMagic[8] = {'A', 'C', 'G', 'A', 'N', 'C', 'K', 'P'};

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(static_cast<char>(v)); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void str(const std::string& s) {
    u64(s.size());
    buf_ += s;
  }
  void f64s(const std::vector<double>& v) {
    u64(v.size());
    for (double x : v) f64(x);
  }
  std::string& buffer() { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  std::uint8_t u8() {
    need(1);
    return static_cast<std::uint8_t>(bytes_[pos_++]);
  }
  std::uint32_t u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(u8()) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(u8()) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::string str() {
    const auto n = u64();
    need(n);
    std::string s(bytes_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  std::vector<double> f64s() {
    const auto n = u64();
    need(n * 8);
    std::vector<double> v(n);
    for (auto& x : v) x = f64();
    return v;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::uint64_t n) const {
    if (n > bytes_.size() - pos_) throw IoError("checkpoint payload is truncated");
  }
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

void put_network(Writer& w, const nn::MlpNetwork& net) {
  w.u8(static_cast<std::uint8_t>(net.role));
  w.u64(net.layers.size());
  for (const auto& l : net.layers) {
    w.u64(l.input_width);
    w.u64(l.output_width);
    w.u8(static_cast<std::uint8_t>(l.activation));
    w.f64(l.leaky_slope);
  }
  w.f64s(net.params);
}

nn::MlpNetwork get_network(Reader& r) {
  nn::MlpNetwork net;
  net.role = static_cast<nn::Role>(r.u8());
  const auto layers = r.u64();
  if (layers > 4096) throw IoError("checkpoint network has an implausible layer count");
  for (std::uint64_t k = 0; k < layers; ++k) {
    nn::LayerSpec l;
    l.input_width = r.u64();
    l.output_width = r.u64();
    l.activation = static_cast<nn::Activation>(r.u8());
    l.leaky_slope = r.f64();
    net.layers.push_back(l);
  }
  net.params = r.f64s();
  if (net.params.size() != nn::param_count(net.layers)) {
    throw IoError("checkpoint network parameter count does not match its layers");
  }
  return net;
}

void put_optimizer(Writer& w, const optim::OptimizerState& s) {
  w.u8(static_cast<std::uint8_t>(s.hp.kind));
  w.f64(s.hp.lr);
  w.f64(s.hp.beta1);
  w.f64(s.hp.beta2);
  w.f64(s.hp.decay);
  w.f64(s.hp.eps);
  w.f64s(s.first_moment);
  w.f64s(s.second_moment);
  w.u64(s.step_count);
}

optim::OptimizerState get_optimizer(Reader& r) {
  optim::OptimizerState s;
  s.hp.kind = static_cast<optim::Kind>(r.u8());
  s.hp.lr = r.f64();
  s.hp.beta1 = r.f64();
  s.hp.beta2 = r.f64();
  s.hp.decay = r.f64();
  s.hp.eps = r.f64();
  s.first_moment = r.f64s();
  s.second_moment = r.f64s();
  s.step_count = r.u64();
  return s;
}

void put_stream(Writer& w, const RngStream& s) {
  w.u64(s.state().key);
  w.u64(s.state().counter);
}

void get_stream(Reader& r, RngStream& s) {
  RngStream::State st;
  st.key = r.u64();
  st.counter = r.u64();
  s.restore(st);
}

}  // namespace

bool TrainingState::operator==(const TrainingState& o) const {
  auto same_streams = [](const RunStreams& a, const RunStreams& b) {
    return a.data.state() == b.data.state() && a.prior.state() == b.prior.state() &&
           a.noise.state() == b.noise.state() && a.reward.state() == b.reward.state() &&
           a.allocation.state() == b.allocation.state();
  };
  return t == o.t && generator == o.generator && ensemble == o.ensemble && bandit == o.bandit &&
         same_streams(streams, o.streams) && pi_history == o.pi_history && metrics == o.metrics &&
         policy_log_offset == o.policy_log_offset && metrics_log_offset == o.metrics_log_offset;
}

std::string encode_checkpoint(const Checkpoint& ck) {
  Writer p;
  const auto& s = ck.state;
  p.str(ck.config_text);
  p.u64(s.t);
  put_network(p, s.generator.net);
  put_optimizer(p, s.generator.optimizer);
  p.u64(s.generator.prior_dim);
  p.u64(s.ensemble.size());
  for (std::size_t i = 0; i < s.ensemble.size(); ++i) {
    put_network(p, s.ensemble.discriminators[i]);
    put_optimizer(p, s.ensemble.optimizers[i]);
  }
  p.f64s(s.bandit.q);
  p.f64s(s.bandit.pi);
  p.u64(s.bandit.t);
  put_stream(p, s.streams.data);
  put_stream(p, s.streams.prior);
  put_stream(p, s.streams.noise);
  put_stream(p, s.streams.reward);
  put_stream(p, s.streams.allocation);
  p.f64s(s.pi_history);
  p.u64(s.metrics.size());
  for (const auto& m : s.metrics) {
    p.u64(m.iteration);
    p.f64(m.fd);
    p.u64(m.modes_covered);
    p.f64(m.hq_fraction);
  }
  p.u64(s.policy_log_offset);
  p.u64(s.metrics_log_offset);

  const std::string& payload = p.buffer();
  Writer out;
  out.buffer().append(kMagic, sizeof(kMagic));
  out.u32(Checkpoint::kFormatVersion);
  out.u64(payload.size());
  out.buffer() += payload;
  out.u32(io::crc32({reinterpret_cast<const unsigned char*>(payload.data()), payload.size()}));
  return std::move(out.buffer());
}

Checkpoint decode_checkpoint(const std::string& bytes) {
  constexpr std::size_t kHeader = sizeof(kMagic) + 4 + 8;
  if (bytes.size() < kHeader + 4) throw IoError("checkpoint is truncated");
  if (std::memcmp(bytes.data(), kMagic, sizeof(kMagic)) != 0) {
    throw IoError("not a checkpoint file (bad magic)");
  }
  Reader header(std::string_view(bytes).substr(sizeof(kMagic), 12));
  const auto version = header.u32();
  if (version != Checkpoint::kFormatVersion) {
    throw IoError("checkpoint format version " + std::to_string(version) + " is not supported (expected " +
                  std::to_string(Checkpoint::kFormatVersion) + ")");
  }
  const auto length = header.u64();
  if (bytes.size() != kHeader + length + 4) throw IoError("checkpoint is truncated");
  const std::string_view payload = std::string_view(bytes).substr(kHeader, length);
  Reader trailer(std::string_view(bytes).substr(kHeader + length, 4));
  const auto stored = trailer.u32();
  const auto actual =
      io::crc32({reinterpret_cast<const unsigned char*>(payload.data()), payload.size()});
  if (stored != actual) throw IoError("checkpoint integrity check failed (checksum mismatch)");

  Reader r(payload);
  Checkpoint ck;
  auto& s = ck.state;
  ck.config_text = r.str();
  s.t = r.u64();
  s.generator.net = get_network(r);
  s.generator.optimizer = get_optimizer(r);
  s.generator.prior_dim = r.u64();
  const auto n = r.u64();
  if (n > 4096) throw IoError("checkpoint has an implausible discriminator count");
  for (std::uint64_t i = 0; i < n; ++i) {
    s.ensemble.discriminators.push_back(get_network(r));
    s.ensemble.optimizers.push_back(get_optimizer(r));
  }
  s.bandit.q = r.f64s();
  s.bandit.pi = r.f64s();
  s.bandit.t = r.u64();
  get_stream(r, s.streams.data);
  get_stream(r, s.streams.prior);
  get_stream(r, s.streams.noise);
  get_stream(r, s.streams.reward);
  get_stream(r, s.streams.allocation);
  s.pi_history = r.f64s();
  const auto rows = r.u64();
  for (std::uint64_t i = 0; i < rows; ++i) {
    MetricsRow m;
    m.iteration = r.u64();
    m.fd = r.f64();
    m.modes_covered = r.u64();
    m.hq_fraction = r.f64();
    s.metrics.push_back(m);
  }
  s.policy_log_offset = r.u64();
  s.metrics_log_offset = r.u64();
  if (!r.done()) throw IoError("checkpoint payload has trailing bytes");
  return ck;
}

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& checkpoint) {
  // Write-then-rename so an interrupted save never leaves a torn file.
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  io::write_file(tmp, encode_checkpoint(checkpoint));
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("cannot move checkpoint into place at " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  return decode_checkpoint(io::read_file(path));
}

}  // namespace acgan

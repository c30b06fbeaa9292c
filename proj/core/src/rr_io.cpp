#include "imgm/rr_io.hpp"

#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "imgm/error.hpp"

namespace imgm {

namespace {

constexpr char kMagic[8] = {'I', 'M', 'G', 'M', 'R', 'R', '1', '\n'};

template <class T>
void write_pod(std::ostream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T read_pod(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw IoError("rr file: truncated");
  return v;
}

InstanceKind kind_from_string(const std::string& s) {
  if (s == "im") return InstanceKind::im;
  if (s == "rm") return InstanceKind::rm;
  if (s == "mrim") return InstanceKind::mrim;
  if (s == "advim") return InstanceKind::advim;
  throw ValidationError("rr file: unknown instance kind '" + s + "'");
}

}  // namespace

void save_rr(const Instance& inst, const RRCollection& coll, const std::string& path) {
  nlohmann::json h;
  h["kind"] = to_string(inst.kind);
  h["model"] = to_string(inst.model);
  h["ground_size"] = inst.ground.size();
  h["theta"] = coll.size();
  h["seed"] = coll.seed();
  h["stream_offset"] = coll.stream_offset();
  h["num_nodes"] = inst.graph->node_count();
  h["num_edges"] = inst.graph->edge_count();
  h["kappa"] = inst.kappa;
  h["kappa_theta"] = inst.kappa_theta;
  h["sigma_l_star"] = inst.sigma_l_star;
  h["ln_num_bases"] = inst.ln_num_bases;
  const InstanceParams& p = inst.params;
  h["params"] = {{"k", p.k},
                 {"rounds", p.rounds},
                 {"alphas", p.alphas},
                 {"node_caps", p.node_caps},
                 {"contagious", p.contagious},
                 {"k_nodes", p.k_nodes},
                 {"k_edges", p.k_edges},
                 {"adv_mode", to_string(p.adv_mode)}};
  h["original_ids"] = inst.graph->original_ids();
  if (inst.kind == InstanceKind::advim) {
    std::vector<std::int64_t> src, dst;
    src.reserve(inst.graph->edge_count());
    dst.reserve(inst.graph->edge_count());
    for (const Edge& e : inst.graph->edges()) {
      src.push_back(inst.graph->original_id(e.src));
      dst.push_back(inst.graph->original_id(e.dst));
    }
    h["edge_src"] = src;
    h["edge_dst"] = dst;
  }

  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open for write: " + path);
  os.write(kMagic, sizeof(kMagic));
  const std::string header = h.dump();
  write_pod<std::uint64_t>(os, header.size());
  os.write(header.data(), static_cast<std::streamsize>(header.size()));
  for (std::size_t r = 0; r < coll.size(); ++r) {
    auto s = coll.set(r);
    write_pod<std::uint32_t>(os, static_cast<std::uint32_t>(s.size()));
    os.write(reinterpret_cast<const char*>(s.data()),
             static_cast<std::streamsize>(s.size() * sizeof(ElementId)));
  }
  if (!os) throw IoError("write failure: " + path);
}

RRFileData load_rr(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open: " + path);
  char magic[8];
  is.read(magic, sizeof(magic));
  if (!is || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) {
    throw ValidationError("rr file: bad magic: " + path);
  }
  const std::uint64_t hlen = read_pod<std::uint64_t>(is);
  std::string htext(hlen, '\0');
  is.read(htext.data(), static_cast<std::streamsize>(hlen));
  if (!is) throw IoError("rr file: truncated header");
  nlohmann::json h;
  try {
    h = nlohmann::json::parse(htext);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("rr file: bad header json: ") + e.what());
  }

  RRFileData fd;
  try {
    fd.kind = kind_from_string(h.at("kind").get<std::string>());
    fd.model = h.at("model").get<std::string>() == "ic" ? Model::ic : Model::lt;
    fd.num_nodes = h.at("num_nodes").get<std::size_t>();
    fd.num_edges = h.at("num_edges").get<std::size_t>();
    fd.kappa = h.at("kappa").get<double>();
    fd.kappa_theta = h.at("kappa_theta").get<double>();
    fd.sigma_l_star = h.at("sigma_l_star").get<double>();
    fd.ln_num_bases = h.at("ln_num_bases").get<double>();
    const auto& p = h.at("params");
    fd.params.k = p.at("k").get<std::uint32_t>();
    fd.params.rounds = p.at("rounds").get<std::uint32_t>();
    fd.params.alphas = p.at("alphas").get<std::vector<double>>();
    fd.params.node_caps = p.at("node_caps").get<std::vector<std::uint32_t>>();
    fd.params.contagious = p.at("contagious").get<std::vector<NodeId>>();
    fd.params.k_nodes = p.at("k_nodes").get<std::uint32_t>();
    fd.params.k_edges = p.at("k_edges").get<std::uint32_t>();
    fd.params.adv_mode = p.at("adv_mode").get<std::string>() == "regenerate"
                             ? AdvMode::regenerate
                             : AdvMode::empty_miss;
    fd.original_ids = h.at("original_ids").get<std::vector<std::int64_t>>();
    if (fd.kind == InstanceKind::advim) {
      fd.edge_src = h.at("edge_src").get<std::vector<std::int64_t>>();
      fd.edge_dst = h.at("edge_dst").get<std::vector<std::int64_t>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("rr file: header field error: ") + e.what());
  }

  switch (fd.kind) {
    case InstanceKind::im:
      fd.ground = GroundSet::for_im(fd.num_nodes);
      fd.matroid = PartitionMatroid::uniform(fd.ground.size(), fd.params.k);
      break;
    case InstanceKind::rm: {
      fd.ground = GroundSet::for_rounds(fd.kind, fd.num_nodes, fd.params.rounds);
      std::vector<std::uint32_t> part(fd.ground.size());
      for (std::size_t id = 0; id < part.size(); ++id) {
        part[id] = static_cast<std::uint32_t>(id % fd.num_nodes);
      }
      fd.matroid = std::make_shared<PartitionMatroid>(std::move(part), fd.params.node_caps);
      break;
    }
    case InstanceKind::mrim: {
      fd.ground = GroundSet::for_rounds(fd.kind, fd.num_nodes, fd.params.rounds);
      std::vector<std::uint32_t> part(fd.ground.size());
      for (std::size_t id = 0; id < part.size(); ++id) {
        part[id] = static_cast<std::uint32_t>(id / fd.num_nodes);
      }
      fd.matroid = std::make_shared<PartitionMatroid>(
          std::move(part), std::vector<std::uint32_t>(fd.params.rounds, fd.params.k));
      break;
    }
    case InstanceKind::advim: {
      fd.ground = GroundSet::for_advim(fd.num_nodes, fd.num_edges, fd.params.contagious);
      const std::size_t nva = fd.ground.num_non_contagious();
      std::vector<std::uint32_t> part(fd.ground.size());
      for (std::size_t id = 0; id < part.size(); ++id) part[id] = id < nva ? 0u : 1u;
      fd.matroid = std::make_shared<PartitionMatroid>(
          std::move(part), std::vector<std::uint32_t>{fd.params.k_nodes, fd.params.k_edges});
      break;
    }
  }

  const std::uint64_t theta = h.at("theta").get<std::uint64_t>();
  fd.coll = RRCollection(h.at("seed").get<std::uint64_t>(),
                         h.at("stream_offset").get<std::uint64_t>(), fd.ground.size());
  std::vector<ElementId> buf;
  for (std::uint64_t r = 0; r < theta; ++r) {
    const std::uint32_t len = read_pod<std::uint32_t>(is);
    buf.resize(len);
    is.read(reinterpret_cast<char*>(buf.data()),
            static_cast<std::streamsize>(len * sizeof(ElementId)));
    if (!is) throw IoError("rr file: truncated records");
    for (ElementId u : buf) {
      if (u >= fd.ground.size()) throw ValidationError("rr file: element out of range");
    }
    fd.coll.append(buf);
  }
  return fd;
}

std::string RRFileData::element_line(ElementId id) const {
  const ElementCoord c = ground.decode(id);
  std::ostringstream os;
  switch (c.type) {
    case ElementCoord::Type::node:
      if (kind == InstanceKind::advim) {
        os << "node " << original_ids[c.node];
      } else {
        os << original_ids[c.node];
      }
      break;
    case ElementCoord::Type::node_round:
      os << original_ids[c.node] << ' ' << c.round;
      break;
    case ElementCoord::Type::edge:
      os << "edge " << edge_src[c.edge] << ' ' << edge_dst[c.edge];
      break;
  }
  return os.str();
}

}  // namespace imgm

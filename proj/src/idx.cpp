#include "fw/problems/idx.hpp"

#include <fstream>

namespace fw {

namespace {

std::uint32_t read_be32(std::istream& in, const std::string& name) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  if (!in) throw IdxError(name + ": truncated header");
  return (std::uint32_t(b[0]) << 24) | (std::uint32_t(b[1]) << 16) | (std::uint32_t(b[2]) << 8) |
         std::uint32_t(b[3]);
}

}  // namespace

IdxTensor parse_idx(std::istream& in, const std::string& name) {
  unsigned char header[4];
  in.read(reinterpret_cast<char*>(header), 4);
  if (!in) throw IdxError(name + ": truncated header");
  if (header[0] != 0 || header[1] != 0)
    throw IdxError(name + ": bad magic (first two bytes must be zero)");
  IdxTensor t;
  t.type_byte = header[2];
  if (t.type_byte != 0x08)
    throw IdxError(name + ": unsupported type byte " + std::to_string(int(t.type_byte)) +
                   " (only unsigned byte, 0x08, is supported)");
  const int rank = header[3];
  if (rank < 1) throw IdxError(name + ": bad magic (rank byte is zero)");
  t.dims.reserve(rank);
  for (int i = 0; i < rank; ++i) t.dims.push_back(static_cast<Index>(read_be32(in, name)));

  const Index count = t.element_count();
  t.data.resize(static_cast<std::size_t>(count));
  in.read(reinterpret_cast<char*>(t.data.data()), count);
  if (in.gcount() != count) throw IdxError(name + ": payload shorter than header promises");
  return t;
}

IdxTensor load_idx(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IdxError(path + ": cannot open file");
  return parse_idx(in, path);
}

Matrix idx_images_to_features(const IdxTensor& images) {
  if (images.dims.size() != 3)
    throw IdxError("image tensor: expected rank 3, got rank " +
                   std::to_string(images.dims.size()));
  const Index m = images.dims[0];
  const Index pixels = images.dims[1] * images.dims[2];
  Matrix features(m, pixels);
  for (Index i = 0; i < m; ++i)
    for (Index p = 0; p < pixels; ++p)
      features(i, p) = static_cast<double>(images.data[i * pixels + p]) / 255.0;
  return features;
}

std::vector<int> idx_labels(const IdxTensor& labels, int classes) {
  if (labels.dims.size() != 1)
    throw IdxError("label tensor: expected rank 1, got rank " +
                   std::to_string(labels.dims.size()));
  std::vector<int> out(labels.data.size());
  for (std::size_t i = 0; i < labels.data.size(); ++i) {
    const int raw = labels.data[i];
    if (raw < 0 || raw >= classes)
      throw IdxError("label tensor: value " + std::to_string(raw) + " out of range [0, " +
                     std::to_string(classes - 1) + "] at instance " + std::to_string(i));
    out[i] = raw + 1;  // dataset labels are 1-based
  }
  return out;
}

Dataset load_idx_dataset(const std::string& images_path, const std::string& labels_path,
                         int classes) {
  Dataset data;
  data.features = idx_images_to_features(load_idx(images_path));
  data.labels = idx_labels(load_idx(labels_path), classes);
  data.classes = classes;
  if (static_cast<Index>(data.labels.size()) != data.features.rows())
    throw IdxError("image/label instance counts disagree (" +
                   std::to_string(data.features.rows()) + " images vs " +
                   std::to_string(data.labels.size()) + " labels)");
  data.validate();
  return data;
}

Dataset load_idx_directory(const std::string& dir, int classes) {
  return load_idx_dataset(dir + "/train-images-idx3-ubyte", dir + "/train-labels-idx1-ubyte",
                          classes);
}

}  // namespace fw

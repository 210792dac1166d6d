#ifndef FW_PROBLEMS_IDX_HPP
#define FW_PROBLEMS_IDX_HPP

#include <cstdint>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

#include "fw/problems/logistic.hpp"
#include "fw/types.hpp"

namespace fw {

/// Malformed or unreadable IDX input.
class IdxError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raw IDX tensor: big-endian header (two zero bytes, a type byte, a rank
/// byte, rank 4-byte dimensions) followed by the payload. Only the unsigned
/// byte payload type (0x08) is supported; that covers the standard image and
/// label files.
struct IdxTensor {
  std::uint8_t type_byte = 0;
  std::vector<Index> dims;
  std::vector<std::uint8_t> data;

  Index element_count() const {
    Index n = 1;
    for (Index d : dims) n *= d;
    return n;
  }
};

/// Parses an IDX stream. `name` labels error messages.
IdxTensor parse_idx(std::istream& in, const std::string& name);

/// Loads an IDX file from disk.
IdxTensor load_idx(const std::string& path);

/// Rank-3 ubyte image tensor -> one row per image, flattened row-major,
/// pixels scaled to [0, 1] by division by 255.
Matrix idx_images_to_features(const IdxTensor& images);

/// Rank-1 ubyte label tensor -> 1-based labels (raw value + 1).
std::vector<int> idx_labels(const IdxTensor& labels, int classes);

/// Builds a classification dataset from an image/label file pair.
Dataset load_idx_dataset(const std::string& images_path, const std::string& labels_path,
                         int classes = 10);

/// Convenience for a directory holding the standard training-split names
/// `train-images-idx3-ubyte` and `train-labels-idx1-ubyte`.
Dataset load_idx_directory(const std::string& dir, int classes = 10);

}  // namespace fw

#endif  // FW_PROBLEMS_IDX_HPP

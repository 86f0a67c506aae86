#pragma once

// Bounded countermodel search for J.
//
// Candidate frames are the closures of rooted trees whose edges carry labels
// 0..r, one tree per isomorphism class, enumerated by exact node count.  For
// each frame a SAT instance asks for a valuation making the formula false at
// some node.  The parallel and serial searches return the same answer: the
// countermodel on the lowest-numbered frame that has one.

#include <atomic>
#include <cstddef>
#include <optional>
#include <vector>

#include "glpkit/jmodel.hpp"

namespace glpkit {

struct Countermodel {
  JModel model;
  NodeId node = 0;
  std::size_t frame = 0;  // index into tree_frames(size, r)
};

// Closed and validated frames with exactly `nodes` nodes; node 0 is the
// root of the tree.  Cached per (nodes, max_label).
const std::vector<JModel>& tree_frames(std::size_t nodes, Modality max_label);

// A valuation on frame w (variables of f) refuting f at some node, if any.
std::optional<Countermodel> refute_on_frame(const JModel& w, const Formula& f);

std::optional<Countermodel> find_countermodel_serial(const Formula& f, std::size_t nodes,
                                                     const std::atomic<bool>* stop = nullptr);
std::optional<Countermodel> find_countermodel_parallel(const Formula& f, std::size_t nodes,
                                                       const std::atomic<bool>* stop = nullptr);

}  // namespace glpkit

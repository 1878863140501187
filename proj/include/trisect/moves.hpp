#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "trisect/diagram.hpp"

namespace trisect {

TrisectionDiagram shift_basepoint(const TrisectionDiagram& d, const std::string& curve, int offset);
TrisectionDiagram reverse_orientation(const TrisectionDiagram& d, const std::string& curve);
// p (sign) then q (-sign) inserted consecutively at position pos on both curves;
// empty ids are replaced by fresh ones
TrisectionDiagram two_point_insert(const TrisectionDiagram& d, const std::string& lambda, int pos_lambda,
                                   const std::string& mu, int pos_mu, int sign, std::string p = "",
                                   std::string q = "");
TrisectionDiagram two_point_delete(const TrisectionDiagram& d, const std::string& p, const std::string& q);
TrisectionDiagram three_point_flip(const TrisectionDiagram& d, const std::string& p, const std::string& q,
                                   const std::string& r);
// slide lambda over mu; dir = +1 follows mu's orientation, -1 runs against it
TrisectionDiagram handle_slide(const TrisectionDiagram& d, const std::string& lambda, const std::string& mu, int pos,
                               int start, int dir);
TrisectionDiagram stabilize(const TrisectionDiagram& d);
TrisectionDiagram destabilize(const TrisectionDiagram& d);

std::string fresh_crossing_id(const TrisectionDiagram& d, int skip = 0);

struct MoveSpec {
  enum class Variant {
    ShiftBasepoint,
    ReverseOrientation,
    TwoPointInsert,
    TwoPointDelete,
    ThreePointFlip,
    HandleSlide,
    Stabilize,
    Destabilize
  };
  Variant variant = Variant::ShiftBasepoint;
  std::string curve, curve2;    // shift/reverse: curve; insert: lambda, mu; slide: lambda, mu
  std::string p, q, r;          // crossing ids
  int offset = 0, pos = 0, pos2 = 0, sign = 1, start = 0, dir = 1;
};

const char* variant_name(MoveSpec::Variant v);
TrisectionDiagram apply_move(const TrisectionDiagram& d, const MoveSpec& m);
std::string move_to_json(const MoveSpec& m);
MoveSpec move_from_json(const std::string& text);
// a list of moves, as a JSON array
std::vector<MoveSpec> moves_from_json(const std::string& text);

// a random move applicable to d; stabilize and destabilize only when allowed
MoveSpec random_move(const TrisectionDiagram& d, std::mt19937_64& rng, bool allow_stabilize = true);

}  // namespace trisect

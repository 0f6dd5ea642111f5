#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "hoi/geometry/mesh.hpp"
#include "hoi/geometry/pose.hpp"
#include "hoi/losses/loss_weights.hpp"
#include "hoi/motion/sequence.hpp"

namespace hoi {

/// Motion file:
/// {"fps": 30, "skeleton": [names], "keyframe_indices": [ints, optional],
///  "frames": [{"t", "root_pos": [x,y,z], "root_rot": [w,x,y,z],
///              "joints": [[w,x,y,z], ...], "joint_pos": [[x,y,z], ...],
///              "vel": [...], "angvel": [...],
///              "object": {"rot", "pos", "scale", "vel", "angvel"},
///              "action": [...], "forces": [[fx,fy,fz] or magnitude, ...]}]}
/// Everything past t, root_pos, root_rot and object is optional.
/// Readers throw FormatError on malformed content and InputError when the
/// sequence fails validation.
std::string motion_to_json(const HOISequence& seq);
HOISequence motion_from_json(std::string_view text);
void write_motion(const std::filesystem::path& path, const HOISequence& seq);
HOISequence read_motion(const std::filesystem::path& path);

/// {"rotation": [w,x,y,z], "translation": [x,y,z], "scale": s}; extra keys are ignored on read.
std::string pose_to_json(const Pose6DoF& pose);
Pose6DoF pose_from_json(std::string_view text);
Pose6DoF read_pose(const std::filesystem::path& path);

/// {"left_hand": bool, "right_hand": bool, "left_palm": [ints], "right_palm": [ints]}
/// or {"hands": "Left Hand: True, Right Hand: False", ...palms}. Palm indices are
/// checked against the human mesh.
ContactSpec contact_spec_from_json(std::string_view text, const TriangleMesh& human);
std::string contact_spec_to_json(const ContactSpec& spec);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, std::string_view text);

}  // namespace hoi

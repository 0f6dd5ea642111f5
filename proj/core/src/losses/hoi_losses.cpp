#include "hoi/losses/hoi_losses.hpp"

namespace hoi {

double contact_loss(const TriangleMesh& object_posed, const TriangleMesh& human,
                    const ContactSpec& spec, double theta) {
  return contact_loss<double>(std::span<const Eigen::Vector3d>(object_posed.vertices()),
                              object_posed.faces(), human, spec, theta, ContactGate::Hard);
}

double penetration_loss(const TriangleMesh& object_posed, const TriangleMesh& human) {
  return penetration_loss<double>(std::span<const Eigen::Vector3d>(object_posed.vertices()),
                                  human);
}

}  // namespace hoi

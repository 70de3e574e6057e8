#ifndef SATPROV_ALLOCATION_HPP_
#define SATPROV_ALLOCATION_HPP_

#include <vector>

namespace satprov {

// Domain assignment: controller_of[j] is the MEO controlling LEO j, so the
// domains form a partition of the LEO set. senior is the coordinating MEO.
struct Allocation {
  std::vector<int> controller_of;
  int senior = 0;

  int num_leo() const { return static_cast<int>(controller_of.size()); }
};

}  // namespace satprov

#endif  // SATPROV_ALLOCATION_HPP_

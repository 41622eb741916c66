#include "nilsect/nil2.hpp"
#include "nilsect/zcoh.hpp"

namespace nilsect {

template class BasicInvolutiveLattice<Integer>;
template class BasicFinAbGroup<Integer>;
template class BasicCohClass<Integer>;
template class BasicEquivariantMap<Integer>;
template class BasicNil2Group<Integer>;

}  // namespace nilsect

#include "sweep1d/detail/engines_impl.hpp"

namespace sweep1d::detail {

template void classic_worker<HeatModel>(RankContext<HeatModel>&, const LaunchConfig&, RingTransport&);
template void classic_worker<EulerLenModel>(RankContext<EulerLenModel>&, const LaunchConfig&, RingTransport&);
template void classic_worker<EulerFlatModel>(RankContext<EulerFlatModel>&, const LaunchConfig&, RingTransport&);

} // namespace sweep1d::detail

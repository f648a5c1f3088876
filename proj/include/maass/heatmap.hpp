#ifndef MAASS_HEATMAP_HPP
#define MAASS_HEATMAP_HPP

#include <string>

#include "maass/records.hpp"

namespace maass {

struct HeatmapSummary {
    int grid = 0;
    long rows_written = 0; // CSV rows = in-domain grid points
    Real vmin{0}, vmax{0};
    std::string csv_path, pgm_path, meta_path;
};

// Samples the eigenfunction of a converged record on a grid x grid sweep of a
// bounding box of the fundamental domain. Points outside the domain are
// pulled back first. Emits <prefix>.csv (in-domain points only), a 16-bit
// portable graymap <prefix>.pgm (top row = max y), and <prefix>.meta.json
// with the linear value mapping.
HeatmapSummary run_heatmap(const ResultRecord& record, int grid, const std::string& out_prefix);

} // namespace maass

#endif

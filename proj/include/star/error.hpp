#pragma once

#include <stdexcept>
#include <string>

namespace star {

enum class Errc {
    InvalidInput,
    FewerThanThreePoints,
    AllCollinear,
    EmptySites,
    CoincidesWithSite,
    NonPositiveTol,
    CellLargerThanRect,
    CellLargerThanHull,
    SubdivisionTooSmall,
    EpsilonOutOfRange,
    SiteOutsideGrid,
    NoPath,
    FirstStepNotNeighbor,
    EndpointInObstacle,
    AllCandidatesSkipped,
    ResolutionTooCoarse,
    AllPointsBlocked,
    Parse,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

}  // namespace star

#pragma once

#include <map>
#include <optional>
#include <string>

#include "forge/contour.hpp"
#include "forge/flat_s3.hpp"
#include "forge/metric.hpp"
#include "forge/singular_set.hpp"
#include "forge/surfaces.hpp"

namespace forge {

enum class SurfaceClass {
    ImproperAffine,
    Maxface,
    Cmc1Elliptic,
    Cmc1Parabolic,
    FlatFront,
    FlatS3,
};

const char* surface_class_name(SurfaceClass c);

// Tagged union over the five surface families.
struct SurfaceModel {
    SurfaceClass cls;
    std::optional<ImproperAffineData> affine;
    std::optional<MaxfaceData> maxface;
    std::optional<Cmc1Data> cmc1;          // elliptic route
    ExprPtr parabolic_h;                    // parabolic route
    int parabolic_epsilon = 1;
    ExprPtr parabolic_G_hyp;                // hyperbolic Gauss map for parabolic
    std::optional<FlatFrontData> flat_front;
    std::optional<FlatS3Data> flat_s3;

    // Hypothesis flag: the end is conformally a punctured disk. Conformal
    // type detection is out of scope, so this is caller-supplied; it is
    // ignored (forced false) for the plane-domain flat-s3 class.
    bool end_punctured_type = true;
};

struct EndConfig {
    int n_rays = 8;
    double r0 = 0.5;
    double r_check = 0.0;  // 0 means 0.2 * r0
    int grid_n = 256;
    LengthOptions length;
    ClassifyOptions classify;
    // flat-S3 working rectangle
    double rect_half = 2.0;
};

struct EndReport {
    std::string end_id = "z=0";
    SurfaceClass cls;
    bool inconclusive = false;
    std::string inconclusive_reason;

    std::string weak_metric_name;
    DivergenceVerdict weak;       // class-appropriate weak metric
    DivergenceVerdict first;      // first fundamental form ds^2
    bool weakly_complete = false;
    bool complete = false;
    bool singular_compact = false;  // on the probed region only
    bool end_punctured_type = true;
    bool exempt_from_equivalence = false;  // flat-S3 lives on R^2, not Delta*

    std::map<std::string, SingularityVerdict> pole_orders;
    std::map<std::string, double> fitted_constants;
    SingularCurve singular_curve;
    std::string evidence_note;
};

EndReport end_report(const SurfaceModel& model, const EndConfig& cfg = {});

struct ConsistencyResult {
    bool pass = false;
    std::string explanation;
};

// Checks the class equivalence on computed verdicts:
//   complete => weakly complete and compact singular set;
//   (weakly complete and compact and punctured end) => complete.
// Reports marked exempt (flat-S3) skip the reverse implication.
ConsistencyResult theorem_consistency(const EndReport& r);

struct PicardReport {
    bool premise_holds = false;  // |g| bounded or pole-bounded toward 0
    std::string growth;          // "bounded", "pole-bounded", "superpolynomial"
    double min_abs = 0.0, max_abs = 0.0;  // on the innermost circle
    SingularityVerdict classifier;
};

PicardReport picard_premise_check(const ExprPtr& g, const ClassifyOptions& opt = {});

}  // namespace forge

// Generated by tests/oracles/derive_constants.py; do not edit by hand.
#pragma once

namespace frozen {

inline constexpr double kEntropyHalf = 0.13081203594113695913;
inline constexpr double kMInfJ2 = 0.95750402407726874068;
inline constexpr double kMInfJ05H03 = 0.50083188766986501389;
inline constexpr double kMInfJ095H001 = 0.16790052286855673185;

struct CostPoint {
  double J, h, t, alpha, m, cost;
};

inline constexpr CostPoint kCostPoints[] = {
    {1.6, 0.1, 0.5, 0.1, 0.2, -0.031460081884845181356},
    {1.6, 0.1, 0.05, 0.3, -0.4, 0.60588193313824941286},
    {1.6, 0.1, 1.0, -0.7, 0.6, 0.17882784098472019471},
    {1.6, 0.1, 3.0, 0.0, 0.9, -0.24336557437082698504},
    {1.6, 0.1, 0.2, 0.95, 0.999, -0.1050908336453520906},
    {2.9, 0.15, 0.03, -0.3, -0.75, -0.06727024525495154618},
    {2.9, 0.15, 0.4, -0.3, 0.99, -0.60741480630971776798},
    {1.0, 0.2, 0.5, 0.3, 0.741, -0.11459168672603592633},
    {0.95, 0.01, 0.38, 0.46, 0.6, 0.037392062178549767806},
    {2.5, 0.0, 0.0001, 0.5, 0.5002, -0.18181668415842796389},
    {1.3, -0.4, 5.0, -0.2, -0.95, -0.37025778007944393858},
    {2.0, 0.5, 0.01, -0.99, -0.9999, 0.19428286027269139731},
};

struct ConePoint {
  double J, m_one, m_star;
};

inline constexpr ConePoint kCone[] = {
    {1.6, 0.31698813606428890854, 0.38836470874734610386},
    {2.0, 0.59983932012886691696, 0.73148205469874819244},
    {2.5, 0.72588198719119957866, 0.87333734144654480194},
    {3.0, 0.78888656662919663614, 0.93374072705817095671},
};

struct TangencyRef {
  double J, h, m_U, U_B, m_L, L_B;
};

inline constexpr TangencyRef kTangency[] = {
    {2.5, 0.0, 0.59694091707157736311, 0.21178028113249598189, -0.59694091707157736311, -0.21178028113249598189},
    {2.9, 0.15, 0.65481111104999174701, 0.31178217864109199515, -0.65396175471628938539, -0.31510000085443250904},
    {1.42, 0.15, 0.21227321400951266957, -0.16899079057959073726, -0.24702776354730970727, -0.19983120910073417247},
    {1.42, 1.6, 0.29559132818983188398, -0.4077178891819083794, -1.0, -1.5662143952940968015},
};

inline constexpr double kPsiU_J29H015 = 0.016539616699655659143;
inline constexpr double kPsiL_J29H015 = 0.029997630734558043494;
inline constexpr double kPsiStar_J142H015 = 0.95229042864168696385;
inline constexpr double kPsiStar_J29H015 = 0.95229042864168696515;

}  // namespace frozen

//! Transcriptions of the published transformations.

/// The published spatial transformation.
pub const SPATIAL_BT: [(&str, &str); 3] = [
    ("phim_1", "4/w^2*sinh(phip) - 2*i/w*sinh(phip/2)*f1*psbp"),
    ("psbm", "4/w*cosh(phip/2)*f1"),
    ("f1_1", "1/w*cosh(phip/2)*psbp"),
];

/// `4 d_t3 phim` as published.
pub const T3_PHIM: &str = "i/w*(phip_2*cosh(phip/2) - phip_1^2*sinh(phip/2))*psbp*f1 \
    - i/w*(phip_1*cosh(phip/2)*psbp_1 - 2*sinh(phip/2)*psbp_2)*f1 \
    + 2/w^2*(2*phip_2*cosh(phip) - phip_1^2*sinh(phip) + i*psbp*psbp_1*sinh(phip)) \
    - 96*i/w^5*(sinh(phip/2) + 4*sinh(phip/2)^3 + 3*sinh(phip/2)^5)*psbp*f1 \
    - 32/w^6*sinh(phip)^3";

/// `4 d_t3 f1`; the last term has the opposite sign to [`T3_F1_PRINTED`].
pub const T3_F1: &str = "1/(2*w)*cosh(phip/2)*(2*psbp_2 - psbp*phip_1^2) \
    + 1/(2*w)*sinh(phip/2)*(psbp*phip_2 - phip_1*psbp_1) \
    - 12/w^4*sinh(phip)*cosh(phip/2)^2*phip_1*f1 \
    - 12/w^5*sinh(phip)^2*cosh(phip/2)*psbp";

pub const T3_F1_PRINTED: &str = "1/(2*w)*cosh(phip/2)*(2*psbp_2 - psbp*phip_1^2) \
    + 1/(2*w)*sinh(phip/2)*(psbp*phip_2 - phip_1*psbp_1) \
    - 12/w^4*sinh(phip)*cosh(phip/2)^2*phip_1*f1 \
    + 12/w^5*sinh(phip)^2*cosh(phip/2)*psbp";

/// Bosonic `4 d_t3 phim`.
pub const T3_PHIM_BOSONIC: &str = "4/w^2*phip_2*cosh(phip) - 2/w^2*phip_1^2*sinh(phip) - 32/w^6*sinh(phip)^3";

/// Coefficient functions `c0..c15` of the t5 `phim` transformation.
pub const T5_C: [&str; 16] = [
    "-phip_4*cosh(phip/2) + phip_2^2*sinh(phip/2) + 3*phip_3*phip_1*sinh(phip/2) \
     + phip_2*phip_1^2*cosh(phip/2) - 3/4*phip_1^4*sinh(phip/2)",
    "phip_3*cosh(phip/2) - phip_1^3*cosh(phip/2) + 4*phip_2*phip_1*sinh(phip/2)",
    "-phip_2*cosh(phip/2) + 2*phip_1^2*sinh(phip/2)",
    "phip_1*cosh(phip/2)",
    "-2*sinh(phip/2)",
    "4*phip_4*cosh(phip) - 6*phip_2*phip_1^2*cosh(phip) + 2*phip_2^2*sinh(phip) \
     - 4*phip_3*phip_1*sinh(phip) + 3/2*phip_1^4*sinh(phip)",
    "4*phip_2*cosh(phip) - 4*phip_1^2*sinh(phip)",
    "2*phip_1*cosh(phip)",
    "2*sinh(phip)",
    "(-20*cosh(phip/2) + 20*cosh(3*phip/2) + 80*cosh(5*phip/2))*phip_2 \
     + (35*sinh(phip/2) - 15/2*sinh(3*phip/2) + 75/2*sinh(5*phip/2))*phip_1^2",
    "(70*cosh(phip/2) - 25*cosh(3*phip/2) + 35*cosh(5*phip/2))*phip_1",
    "-20*sinh(phip/2) + 10*sinh(3*phip/2) + 30*sinh(5*phip/2)",
    "40*phip_2*(cosh(phip) - cosh(3*phip)) - 20*phip_1^2*(5*sinh(phip) + sinh(3*phip))",
    "30*sinh(phip) - 10*sinh(3*phip)",
    "-120*sinh(phip/2) + 80*sinh(3*phip/2) + 240*sinh(5*phip/2) - 60*sinh(7*phip/2) - 100*sinh(9*phip/2)",
    "240*sinh(phip) - 120*sinh(3*phip) + 24*sinh(5*phip)",
];

/// Where each `c_k` enters `16 d_t5 phim`; `c8` multiplies two structures.
pub const T5_C_UNITS: [(usize, &str); 17] = [
    (0, "-i/w*psbp*f1"),
    (1, "-i/w*psbp_1*f1"),
    (2, "-i/w*psbp_2*f1"),
    (3, "-i/w*psbp_3*f1"),
    (4, "-i/w*psbp_4*f1"),
    (5, "1/w^2"),
    (6, "i/w^2*psbp*psbp_1"),
    (7, "i/w^2*psbp*psbp_2"),
    (8, "i/w^2*psbp*psbp_3"),
    (8, "-i/w^2*psbp_1*psbp_2"),
    (9, "-i/w^5*psbp*f1"),
    (10, "-i/w^5*psbp_1*f1"),
    (11, "-i/w^5*psbp_2*f1"),
    (12, "1/w^6"),
    (13, "i/w^6*psbp*psbp_1"),
    (14, "i/w^9*f1*psbp"),
    (15, "1/w^10"),
];

/// Coefficient functions `g0..g11` of the t5 `f1` transformation.
pub const T5_G: [&str; 12] = [
    "(-1/2*phip_2^2 - 3/2*phip_3*phip_1 + 3/8*phip_1^4)*cosh(phip/2) \
     + (1/2*phip_4 - 1/2*phip_2*phip_1^2)*sinh(phip/2)",
    "(-1/2*phip_3 + 1/2*phip_1^3)*sinh(phip/2) - 2*phip_2*phip_1*cosh(phip/2)",
    "1/2*phip_2*sinh(phip/2) - phip_1^2*cosh(phip/2)",
    "-1/2*phip_1*sinh(phip/2)",
    "cosh(phip/2)",
    "(10*sinh(phip) - 5*sinh(2*phip))*phip_1",
    "-(5/2 + 20*cosh(phip) + 35/2*cosh(2*phip))*phip_2*phip_1 - (10*sinh(phip) + 5*sinh(2*phip))*phip_3 \
     - (15/2*sinh(phip) + 15/4*sinh(2*phip))*phip_1^3",
    "-(35/2*cosh(phip/2) + 45/4*cosh(3*phip/2) + 45/4*cosh(5*phip/2))*phip_1^2 \
     - (15*sinh(3*phip/2) + 15*sinh(5*phip/2))*phip_2",
    "(-15*sinh(phip/2) - 45/2*sinh(3*phip/2) - 15/2*sinh(5*phip/2))*phip_1",
    "10*cosh(phip/2) - 5*cosh(3*phip/2) - 5*cosh(5*phip/2)",
    "(-120*sinh(phip) - 40*sinh(2*phip) + 40*sinh(3*phip) + 20*sinh(4*phip))*phip_1",
    "60*cosh(phip/2) - 40*cosh(3*phip/2) - 40*cosh(5*phip/2) + 10*cosh(7*phip/2) + 10*cosh(9*phip/2)",
];

/// Where each `g_k` enters `16 d_t5 f1`.
pub const T5_G_UNITS: [(usize, &str); 12] = [
    (0, "1/w*psbp"),
    (1, "1/w*psbp_1"),
    (2, "1/w*psbp_2"),
    (3, "1/w*psbp_3"),
    (4, "1/w*psbp_4"),
    (5, "i/w^4*psbp*psbp_1*f1"),
    (6, "1/w^4*f1"),
    (7, "1/w^5*psbp"),
    (8, "1/w^5*psbp_1"),
    (9, "1/w^5*psbp_2"),
    (10, "1/w^8*f1"),
    (11, "1/w^9*psbp"),
];


/// `4 d_t3 psbm`, as implied by the spatial transformation and the `f1` time equation.
pub const T3_PSBM: &str = "-1/w*sinh(phip/2)*(phip_1^3 - 2*phip_3 - 3*i/2*phip_1*psbp*psbp_1)*f1 \
    + 1/w^2*sinh(phip)*(psbp*phip_2 - phip_1*psbp_1) \
    + 2/w^2*cosh(phip/2)^2*(2*psbp_2 - psbp*phip_1^2) \
    - 96/w^5*(sinh(phip/2) + 4*sinh(phip/2)^3 + 3*sinh(phip/2)^5)*phip_1*f1 \
    - 48/w^6*sinh(phip)^2*cosh(phip/2)^2*psbp";

/// `4 d_t3 psbm` as printed.
pub const T3_PSBM_PRINTED: &str = "-1/w*sinh(phip/2)*(phip_1^3 - 2*phip_3 - 3/2*phip_1*psbp*psbp_1)*f1 \
    + 3/w^2*sinh(phip)*(psbp*phip_2 - phip_1*psbp_1) \
    + 2/w^2*(1 + 3*sinh(phip/2)^2)*(2*psbp_2 - psbp*phip_1^2) \
    - 96/w^5*(sinh(phip/2) + 4*sinh(phip/2)^3 + 3*sinh(phip/2)^5)*phip_1*f1 \
    + 24/w^6*sinh(phip)^2*(1 - 7*cosh(phip))*psbp";

/// `4 d_t3 b1`, the time derivative of [`B1`].
pub const T3_B1: &str = "i/(2*w)*cosh(phip/2)*(phip_1^3 - 2*phip_3 - 3*i/2*phip_1*psbp*psbp_1) \
    + 12/w^4*sinh(phip)*cosh(phip/2)^2*f1*psbp_1 \
    - 6/w^4*(cosh(phip) + cosh(2*phip))*psbp*f1*phip_1 \
    + 24*i/w^5*sinh(phip)^2*cosh(phip/2)*phip_1";

/// `4 d_t3 b1` as printed.
pub const T3_B1_PRINTED: &str = "i/(2*w)*cosh(phip/2)*(phip_1^3 - 2*phip_3 - 3*i/2*phip_1*psbp*psbp_1) \
    + 12/w^4*sinh(phip)*cosh(phip/2)^2*f1*psbp_1 \
    + 6/w^4*(cosh(phip) + cosh(2*phip))*psbp*f1*phip_1";

/// Auxiliary boson fixed by the spatial superfield transformation.
pub const B1: &str = "-2*i/w*sinh(phip/2)";

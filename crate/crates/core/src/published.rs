//! Published reference values for the two standard parameter sets.
//!
//! The arrays are the values as printed, kept verbatim so that regression
//! tests and the table-replication commands can report deviations.

use crate::ScarfParams;

/// `V1 = 1, V+ = 0.25, V0 = V- = 0, L = 1`.
pub fn case1() -> ScarfParams {
    ScarfParams::new(0.0, 0.25, 0.0, 1.0, 1.0).expect("valid")
}

/// Sine-bottom well `V1 = 1, V0 = V± = 0, L = 1`.
pub fn case2() -> ScarfParams {
    ScarfParams::new(0.0, 0.0, 0.0, 1.0, 1.0).expect("valid")
}

/// `V0 = V1 = 1, V+ = 0.25, V- = 0.1, L = 1`.
pub fn potential_curve() -> ScarfParams {
    ScarfParams::new(1.0, 0.25, 0.1, 1.0, 1.0).expect("valid")
}

/// Starting points `y0` of the plateau table.
pub const TABLE1_Y0: [f64; 11] = [-0.9, -0.7, -0.5, -0.3, -0.1, 0.0, 0.1, 0.3, 0.5, 0.7, 0.9];

pub const TABLE1_ITERATIONS: [usize; 15] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 15, 20, 30, 50, 100];

/// Ground-state `ε₀` for Case 1, rows follow [`TABLE1_ITERATIONS`], columns [`TABLE1_Y0`].
pub const TABLE1_EPS0: [[f64; 11]; 15] = [
    [
        1.11121596, 1.10615724, 1.10253753, 1.10022861, 1.09912022, 1.09898585, 1.09911675, 1.10013464, 1.10210036,
        1.10494881, 1.10862200,
    ],
    [
        1.09528288, 1.09546731, 1.09559105, 1.09567252, 1.09572924, 1.09575353, 1.09577777, 1.09583377, 1.09591196,
        1.09602618, 1.09618936,
    ],
    [
        1.09575954, 1.09575561, 1.09575330, 1.09575206, 1.09575153, 1.09575148, 1.09575155, 1.09575212, 1.09575338,
        1.09575565, 1.09575938,
    ],
    [
        1.09575085, 1.09575091, 1.09575094, 1.09575095, 1.09575096, 1.09575096, 1.09575096, 1.09575097, 1.09575098,
        1.09575101, 1.09575106,
    ],
    [
        1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575095, 1.09575096, 1.09575096, 1.09575096,
        1.09575096, 1.09575096,
    ],
    [
        1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096,
        1.09575096, 1.09575098,
    ],
    [
        1.09575126, 1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096,
        1.09575096, 1.09575091,
    ],
    [
        1.09576026, 1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096,
        1.09575096, 1.09575136,
    ],
    [
        1.09589152, 1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096,
        1.09575096, 1.09567190,
    ],
    [
        1.09669582, 1.09575095, 1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096, 1.09575096,
        1.09575096, 1.09485162,
    ],
    [
        -48.4023558,
        1.09575655,
        1.09575096,
        1.09575096,
        1.09575096,
        1.09575096,
        1.09575096,
        1.09575096,
        1.09575096,
        1.09575684,
        -50.91596,
    ],
    [
        -121.23852,
        1.15320760,
        1.09575021,
        1.09575096,
        1.09575096,
        1.09575096,
        1.09575096,
        1.09575096,
        1.09575147,
        17.129705,
        -760.341065,
    ],
    [
        -87475.723, -206.58849, 1.11811404, 1.09575097, 1.09575096, 1.09575096, 1.09575096, 1.09575097, 1.09075267,
        -173.51422, -79170.112,
    ],
    [
        -29222.707, -18517.54, -503.87627, 1.08537181, 1.09575096, 1.09575096, 1.09575096, 1.08153927, 0.0, -17002.7,
        -26036.89,
    ],
    [-1.896722, -25922.91, -86230.156, 0.0, 1.09575096, 1.09575096, 1.09575103, 0.0, -86223.88, -26531.56, -1.89672],
];

/// First excited `ε₁` for Case 1, same layout as [`TABLE1_EPS0`].
pub const TABLE1_EPS1: [[f64; 11]; 15] = [
    [3.818650, 3.904766, 3.989442, 4.072808, 4.154974, 4.195636, 4.236034, 4.316073, 4.395164, 4.473372, 4.550756],
    [4.223949, 4.214475, 4.207675, 4.203303, 4.201145, 4.200837, 4.201014, 4.202745, 4.206192, 4.211224, 4.217724],
    [4.196199, 4.196484, 4.196666, 4.196777, 4.196846, 4.196873, 4.196810, 4.196964, 4.197063, 4.197220, 4.197454],
    [4.196883, 4.196879, 4.196876, 4.196874, 4.196873, 4.196873, 4.196874, 4.196874, 4.196876, 4.196878, 4.196882],
    [4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873],
    [4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873],
    [4.196872, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196871],
    [4.196793, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196916],
    [4.197206, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.200175],
    [4.193668, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.208975],
    [-19.8271, 4.196697, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196795, 0.0],
    [-17.7743, 2.039172, 4.196878, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 4.196862, 99.3084, -361.064],
    [-10370.12, -21.6482, 3.970720, 4.196873, 4.196873, 4.196873, 4.196873, 4.196873, 3.642828, 25.3704, -20192.02],
    [-12256.0, -8848.12, -46.6361, 4.272074, 4.196873, 4.196873, 4.196873, 4.166646, 4.058064, -11492.6, -9821.21],
    [-3.2202, -2308.36, -56002.4, 0.0, 4.196874, 4.196873, 4.196873, 0.0, -56004.09, -2178.59, -3.307368],
];

pub const TABLE2_Y0: [f64; 3] = [-0.1, 0.0, 0.1];

pub const TABLE2_ITERATIONS: [usize; 15] = TABLE1_ITERATIONS;

/// High-precision `ε₀` for Case 1, rows follow [`TABLE2_ITERATIONS`], columns [`TABLE2_Y0`].
pub const TABLE2_EPS0: [[f64; 3]; 15] = [
    [1.0991202248315695, 1.09898585279422, 1.0991167526968348],
    [1.0957292393803957, 1.095753527922459, 1.0957777701723037],
    [1.0957515331417946, 1.095751480043435, 1.095751554739332],
    [1.095750956836507, 1.095750959070117, 1.0957509613421887],
    [1.0957509589138086, 1.095750958910591, 1.09575095891494],
    [1.0957509588952719, 1.095750958895319, 1.09575095889537],
    [1.095750958895318, 1.095750958895318, 1.0957509588953176],
    [1.0957509588953167, 1.095750958895317, 1.095750958895317],
    [1.095750958895314, 1.095750958895318, 1.0957509588953156],
    [1.0957509588953172, 1.095750958895317, 1.095750958895318],
    [1.0957509588953178, 1.095750958895317, 1.0957509588953191],
    [1.0957509588953054, 1.095750958895317, 1.0957509588953052],
    [1.0957509588953414, 1.095750958895317, 1.0957509588954089],
    [1.0957509588941203, 1.095750958895318, 1.0957509588954446],
    [1.0957509556475724, 1.095750958895317, 1.0957510397379888],
];

/// Case 1 spectrum: AIM (10 iterations, `y0 = 0`).
pub const TABLE3_AIM: [f64; 10] = [
    1.095750958895317,
    4.196873325806087,
    9.292844177187838,
    16.389252331506132,
    25.485790081950977,
    36.58237913869347,
    49.678992506294904,
    64.77561899613518,
    81.87225251919959,
    100.97373751566363,
];

/// Case 1 spectrum: TRA (`N = 10`).
pub const TABLE3_TRA: [f64; 10] = [
    1.095750958895317,
    4.196873325806094,
    9.29284417718781,
    16.38925233150634,
    25.48579008195058,
    36.58237913866615,
    49.67899250636078,
    64.77561887661372,
    81.8727900682211,
    100.9688405503092,
];

pub const TABLE4_Y0: [f64; 3] = [-0.1, 0.0, 0.1];

/// Case 2 spectrum: AIM (10 iterations), columns [`TABLE4_Y0`].
pub const TABLE4_AIM: [[f64; 3]; 10] = [
    [0.9965804414948887, 0.9965804414948881, 0.9965804414948877],
    [4.001366326993638, 4.0013663269936615, 4.001366326993682],
    [9.000586656216685, 9.000586656216424, 9.000586656216043],
    [16.00032590879089, 16.000325908792934, 16.000325908795052],
    [25.000207394742418, 25.000207394728182, 25.000207394715762],
    [36.00014358054208, 36.00014358054704, 36.00014358054918],
    [49.00010529186438, 49.00010529226843, 49.000105292787566],
    [64.00008070727844, 64.00008065049936, 64.00008070322694],
    [81.00003408297702, 81.00006328059685, 81.00009189292832],
    [100.00613182329307, 100.00494124743338, 100.0059053176835],
];

/// Case 2 spectrum: TRA (`N = 10`).
pub const TABLE4_TRA: [f64; 10] = [
    0.9965804414948881,
    4.0013663269936615,
    9.000586656216425,
    16.000325908792927,
    25.000207394728175,
    36.0001435805457,
    49.00010529227191,
    64.00008052770214,
    81.00006387125417,
    100.000000000000,
];

//! Published confusion matrices and rates, transcribed row by row.

/// `(resolution, accuracy, [[TP, FP], [FN, TN]])`
pub type CmRow = (u32, f64, [[u64; 2]; 2]);

/// `(resolution, tpr, fpr, f1)`
pub type RateRow = (u32, f64, f64, f64);

pub const CONFUSION_TABLES: [(&str, [CmRow; 13]); 8] = [
    ("logreg balanced", [
        (10, 0.868421, [[165, 25], [25, 165]]),
        (20, 0.852632, [[163, 27], [29, 161]]),
        (30, 0.834211, [[159, 31], [32, 158]]),
        (40, 0.813158, [[153, 37], [34, 156]]),
        (50, 0.834211, [[155, 35], [28, 162]]),
        (60, 0.865789, [[160, 30], [21, 169]]),
        (70, 0.863158, [[164, 26], [26, 164]]),
        (80, 0.868421, [[163, 27], [23, 167]]),
        (90, 0.873684, [[166, 24], [24, 166]]),
        (100, 0.871053, [[164, 26], [23, 167]]),
        (150, 0.873684, [[166, 24], [24, 166]]),
        (200, 0.868421, [[164, 26], [24, 166]]),
        (250, 0.868421, [[163, 27], [23, 167]]),
    ]),
    ("logreg unbalanced", [
        (10, 0.947020, [[0, 0], [48, 858]]),
        (20, 0.964680, [[0, 0], [32, 874]]),
        (30, 0.962472, [[0, 0], [34, 872]]),
        (40, 0.965784, [[0, 0], [31, 875]]),
        (50, 0.973510, [[0, 0], [24, 882]]),
        (60, 0.976821, [[0, 0], [21, 885]]),
        (70, 0.972406, [[0, 0], [25, 881]]),
        (80, 0.974614, [[0, 0], [23, 883]]),
        (90, 0.973510, [[0, 0], [24, 882]]),
        (100, 0.976821, [[0, 0], [21, 885]]),
        (150, 0.975717, [[0, 0], [22, 884]]),
        (200, 0.974614, [[0, 0], [23, 883]]),
        (250, 0.975717, [[0, 0], [22, 884]]),
    ]),
    ("sigmoid balanced", [
        (10, 0.473684, [[81, 109], [91, 99]]),
        (20, 0.689474, [[142, 48], [70, 120]]),
        (30, 0.689474, [[142, 48], [70, 120]]),
        (40, 0.689474, [[142, 48], [70, 120]]),
        (50, 0.689474, [[142, 48], [70, 120]]),
        (60, 0.689474, [[142, 48], [70, 120]]),
        (70, 0.689474, [[141, 49], [69, 121]]),
        (80, 0.689474, [[141, 49], [69, 121]]),
        (90, 0.689474, [[141, 49], [69, 121]]),
        (100, 0.689474, [[141, 49], [69, 121]]),
        (150, 0.689474, [[141, 49], [69, 121]]),
        (200, 0.507895, [[90, 100], [87, 103]]),
        (250, 0.689474, [[141, 49], [69, 121]]),
    ]),
    ("sigmoid unbalanced", [
        (10, 0.539735, [[0, 0], [417, 489]]),
        (20, 0.663355, [[0, 0], [305, 601]]),
        (30, 0.663355, [[0, 0], [305, 601]]),
        (40, 0.666667, [[0, 0], [302, 604]]),
        (50, 0.667770, [[0, 0], [301, 605]]),
        (60, 0.668874, [[0, 0], [300, 606]]),
        (70, 0.671082, [[0, 0], [298, 608]]),
        (80, 0.671082, [[0, 0], [298, 608]]),
        (90, 0.671082, [[0, 0], [298, 608]]),
        (100, 0.671082, [[0, 0], [298, 608]]),
        (150, 0.673289, [[0, 0], [296, 610]]),
        (200, 0.556291, [[0, 0], [402, 504]]),
        (250, 0.673289, [[0, 0], [296, 610]]),
    ]),
    ("poly balanced", [
        (10, 0.894737, [[167, 23], [17, 173]]),
        (20, 0.905263, [[170, 20], [16, 174]]),
        (30, 0.897368, [[167, 23], [16, 174]]),
        (40, 0.900000, [[168, 22], [16, 174]]),
        (50, 0.892105, [[166, 24], [17, 173]]),
        (60, 0.889474, [[166, 24], [18, 172]]),
        (70, 0.900000, [[169, 21], [17, 173]]),
        (80, 0.900000, [[169, 21], [17, 173]]),
        (90, 0.900000, [[169, 21], [17, 173]]),
        (100, 0.894737, [[168, 22], [18, 172]]),
        (150, 0.892105, [[167, 23], [18, 172]]),
        (200, 0.892105, [[167, 23], [18, 172]]),
        (250, 0.889474, [[166, 24], [18, 172]]),
    ]),
    ("poly unbalanced", [
        (10, 0.961369, [[0, 0], [35, 871]]),
        (20, 0.967991, [[0, 0], [29, 877]]),
        (30, 0.972406, [[0, 0], [25, 881]]),
        (40, 0.971302, [[0, 0], [26, 880]]),
        (50, 0.971302, [[0, 0], [26, 880]]),
        (60, 0.972406, [[0, 0], [25, 881]]),
        (70, 0.974614, [[0, 0], [23, 883]]),
        (80, 0.974614, [[0, 0], [23, 883]]),
        (90, 0.975717, [[0, 0], [22, 884]]),
        (100, 0.974614, [[0, 0], [23, 883]]),
        (150, 0.976821, [[0, 0], [21, 885]]),
        (200, 0.976821, [[0, 0], [21, 885]]),
        (250, 0.976821, [[0, 0], [21, 885]]),
    ]),
    ("gaussian balanced", [
        (10, 0.907895, [[173, 17], [18, 172]]),
        (20, 0.902632, [[173, 17], [20, 170]]),
        (30, 0.902632, [[174, 16], [21, 169]]),
        (40, 0.905263, [[175, 15], [21, 169]]),
        (50, 0.910526, [[175, 15], [19, 171]]),
        (60, 0.913158, [[175, 15], [18, 172]]),
        (70, 0.910526, [[174, 16], [18, 172]]),
        (80, 0.907895, [[174, 16], [19, 171]]),
        (90, 0.907895, [[174, 16], [19, 171]]),
        (100, 0.907895, [[174, 16], [19, 171]]),
        (150, 0.910526, [[173, 17], [17, 173]]),
        (200, 0.905263, [[174, 16], [20, 170]]),
        (250, 0.918421, [[175, 15], [16, 174]]),
    ]),
    ("gaussian unbalanced", [
        (10, 0.967991, [[0, 0], [29, 877]]),
        (20, 0.960265, [[0, 0], [36, 870]]),
        (30, 0.960265, [[0, 0], [36, 870]]),
        (40, 0.962472, [[0, 0], [34, 872]]),
        (50, 0.967991, [[0, 0], [29, 877]]),
        (60, 0.969095, [[0, 0], [28, 878]]),
        (70, 0.969095, [[0, 0], [28, 878]]),
        (80, 0.970199, [[0, 0], [27, 879]]),
        (90, 0.970199, [[0, 0], [27, 879]]),
        (100, 0.971302, [[0, 0], [26, 880]]),
        (150, 0.977925, [[0, 0], [20, 886]]),
        (200, 0.970199, [[0, 0], [27, 879]]),
        (250, 0.983444, [[0, 0], [15, 891]]),
    ]),
];

/// Rates for the balanced tables, in the same model order as the
/// even-indexed entries of [`CONFUSION_TABLES`].
pub const RATE_TABLES: [(&str, [RateRow; 13]); 4] = [
    ("logreg balanced rates", [
        (10, 0.868421, 0.131579, 0.868421),
        (20, 0.848958, 0.143617, 0.853403),
        (30, 0.832461, 0.164021, 0.834646),
        (40, 0.818182, 0.191710, 0.811671),
        (50, 0.846995, 0.177665, 0.831099),
        (60, 0.883978, 0.150754, 0.862534),
        (70, 0.863158, 0.136842, 0.863158),
        (80, 0.876344, 0.139175, 0.867021),
        (90, 0.873684, 0.126316, 0.873684),
        (100, 0.877005, 0.134715, 0.870027),
        (150, 0.873684, 0.126316, 0.873684),
        (200, 0.872340, 0.135417, 0.867725),
        (250, 0.876344, 0.139175, 0.867021),
    ]),
    ("sigmoid balanced rates", [
        (10, 0.470930, 0.524038, 0.447514),
        (20, 0.669811, 0.285714, 0.706468),
        (30, 0.669811, 0.285714, 0.706468),
        (40, 0.669811, 0.285714, 0.706468),
        (50, 0.669811, 0.285714, 0.706468),
        (60, 0.669811, 0.285714, 0.706468),
        (70, 0.671429, 0.288235, 0.705000),
        (80, 0.671429, 0.288235, 0.705000),
        (90, 0.671429, 0.288235, 0.705000),
        (100, 0.671429, 0.288235, 0.705000),
        (150, 0.671429, 0.288235, 0.705000),
        (200, 0.508475, 0.492611, 0.490463),
        (250, 0.671429, 0.288235, 0.705000),
    ]),
    ("poly balanced rates", [
        (10, 0.907609, 0.117347, 0.893048),
        (20, 0.913978, 0.103093, 0.904255),
        (30, 0.912568, 0.116751, 0.895442),
        (40, 0.913043, 0.112245, 0.898396),
        (50, 0.907104, 0.121827, 0.890080),
        (60, 0.902174, 0.122449, 0.887701),
        (70, 0.908602, 0.108247, 0.898936),
        (80, 0.908602, 0.108247, 0.898936),
        (90, 0.908602, 0.108247, 0.898936),
        (100, 0.903226, 0.113402, 0.893617),
        (150, 0.902703, 0.117949, 0.890667),
        (200, 0.902703, 0.117949, 0.890667),
        (250, 0.902174, 0.122449, 0.887701),
    ]),
    ("gaussian balanced rates", [
        (10, 0.905759, 0.089947, 0.908136),
        (20, 0.896373, 0.090909, 0.903394),
        (30, 0.892308, 0.086486, 0.903896),
        (40, 0.892857, 0.081522, 0.906736),
        (50, 0.902062, 0.080645, 0.911458),
        (60, 0.906736, 0.080214, 0.913838),
        (70, 0.906250, 0.085106, 0.910995),
        (80, 0.901554, 0.085561, 0.908616),
        (90, 0.901554, 0.085561, 0.908616),
        (100, 0.901554, 0.085561, 0.908616),
        (150, 0.910526, 0.089474, 0.910526),
        (200, 0.896907, 0.086022, 0.906250),
        (250, 0.916230, 0.079365, 0.918635),
    ]),
];

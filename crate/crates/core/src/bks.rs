//! Best known objective values for the TSPLIB benchmark set, all vehicles
//! starting at the first vertex. The mGSP values were obtained with a
//! probability sequence that is not available, so they are informational.

use crate::instance::Mode;

pub const BENCHMARK_INSTANCES: [&str; 8] = [
    "berlin52", "bier127", "gil262", "lin318", "pcb442", "rat575", "u724", "pr1002",
];

pub const BENCHMARK_VEHICLES: [usize; 5] = [2, 4, 6, 8, 10];

const MTDP: [(&str, [f64; 5]); 8] = [
    ("berlin52", [70235.0, 39746.0, 30563.0, 25470.0, 23919.0]),
    (
        "bier127",
        [2354332.0, 1228367.0, 879448.0, 713125.0, 612336.0],
    ),
    ("gil262", [153716.0, 87114.0, 65428.0, 55306.0, 50292.0]),
    (
        "lin318",
        [3140312.0, 1811206.0, 1431946.0, 1214427.0, 1129348.0],
    ),
    (
        "pcb442",
        [5292831.0, 2849704.0, 2055340.0, 1607307.0, 1402893.0],
    ),
    ("rat575", [994166.0, 524957.0, 375842.0, 303082.0, 260937.0]),
    (
        "u724",
        [7479059.0, 3904506.0, 2926359.0, 2427262.0, 2111492.0],
    ),
    (
        "pr1002",
        [65541078.0, 36553749.0, 26676866.0, 20946133.0, 19540052.0],
    ),
];

const MGSP: [(&str, [f64; 5]); 8] = [
    (
        "berlin52",
        [1289.3665, 711.9565, 569.3354, 510.9161, 462.7143],
    ),
    (
        "bier127",
        [16938.3426, 9015.8078, 6439.1727, 5297.5682, 4517.5042],
    ),
    ("gil262", [557.1953, 324.9695, 241.1403, 208.0251, 195.8603]),
    (
        "lin318",
        [9729.8214, 5614.8969, 4390.3071, 3728.5347, 3504.8153],
    ),
    (
        "pcb442",
        [11670.8481, 6076.4795, 4438.6460, 3634.2044, 3197.8358],
    ),
    (
        "rat575",
        [1624.6539, 885.9464, 647.9221, 527.9039, 444.0691],
    ),
    (
        "u724",
        [10053.0689, 5492.4174, 3967.1502, 3377.1366, 2805.0308],
    ),
    (
        "pr1002",
        [60325.4178, 34423.7763, 25056.6643, 20813.4050, 17750.8518],
    ),
];

/// Published best known value, if the (instance, vehicles) pair is tabulated.
pub fn published_bks(instance: &str, vehicles: usize, mode: Mode) -> Option<f64> {
    let table = match mode {
        Mode::Mtdp => &MTDP,
        Mode::Mgsp => &MGSP,
    };
    let col = BENCHMARK_VEHICLES.iter().position(|&m| m == vehicles)?;
    table
        .iter()
        .find(|(name, _)| *name == instance)
        .map(|(_, row)| row[col])
}

/// Published percentage errors: MF, CW, F, S, Y, AE, BE, ML-C, ML-SC.
pub const PUBLISHED_GAPS: &[(&str, [f64; 9])] = &[
    ("kroA100", [14.120, 6.043, 9.618, 22.437, 8.636, 11.986, 7.429, 6.480, 3.792]),
    ("kroC100", [12.270, 11.480, 8.362, 27.558, 5.263, 13.391, 6.950, 10.343, 4.776]),
    ("rd100", [16.928, 8.736, 11.580, 24.121, 11.214, 14.212, 8.938, 8.559, 6.738]),
    ("eil101", [27.504, 5.087, 8.426, 22.099, 18.760, 14.348, 8.426, 4.293, 0.000]),
    ("lin105", [16.065, 8.638, 7.177, 37.332, 21.406, 12.580, 7.080, 8.485, 10.780]),
    ("pr107", [5.799, 10.166, 9.245, 10.640, 8.936, 9.454, 6.717, 11.153, 0.445]),
    ("pr124", [10.110, 2.502, 4.911, 24.344, 7.942, 9.079, 4.191, 6.991, 2.997]),
    ("bier127", [14.186, 5.659, 4.753, 25.162, 12.370, 10.091, 4.571, 6.604, 0.000]),
    ("ch130", [28.462, 7.480, 7.414, 22.733, 8.003, 12.305, 8.429, 4.975, 4.206]),
    ("pr136", [23.160, 7.186, 11.709, 15.693, 16.046, 14.878, 11.701, 11.151, 3.713]),
    ("gr137", [27.234, 8.243, 9.742, 30.207, 15.548, 14.170, 10.124, 7.329, 3.188]),
    ("pr144", [12.483, 6.444, 6.628, 12.016, 4.161, 7.625, 3.796, 4.474, 3.962]),
    ("kroA150", [20.238, 8.468, 10.507, 26.934, 14.134, 12.799, 9.467, 6.877, 1.139]),
    ("pr152", [15.196, 9.455, 7.204, 17.060, 6.117, 8.239, 5.647, 6.919, 3.793]),
    ("u159", [17.952, 8.408, 9.009, 19.881, 10.542, 11.788, 5.589, 7.952, 6.024]),
    ("rat195", [13.043, 5.854, 7.576, 13.431, 13.345, 10.286, 5.854, 7.533, 0.000]),
    ("d198", [20.507, 5.444, 6.711, 17.535, 7.744, 9.262, 6.267, 6.255, 4.011]),
    ("kroA200", [17.819, 8.622, 11.097, 25.541, 11.298, 13.008, 10.328, 6.681, 2.094]),
    ("gr202", [15.935, 5.683, 7.367, 19.916, 7.716, 9.673, 6.331, 4.436, 1.825]),
    ("ts225", [12.842, 6.804, 9.493, 6.975, 14.929, 11.309, 8.075, 6.520, 11.330]),
    ("tsp225", [26.237, 10.438, 9.790, 24.165, 9.609, 13.906, 9.169, 11.292, 4.403]),
    ("pr226", [21.052, 9.948, 11.918, 16.784, 9.031, 12.347, 8.778, 8.599, 5.370]),
    ("gr229", [19.624, 8.849, 7.593, 22.242, 10.932, 10.807, 6.573, 7.495, 2.807]),
    ("gil262", [12.279, 9.714, 6.602, 24.769, 10.892, 10.976, 8.368, 6.224, 8.999]),
    ("pr264", [14.987, 8.839, 4.919, 16.239, 9.816, 10.091, 6.195, 6.036, 3.739]),
    ("a280", [20.822, 13.998, 13.959, 15.394, 12.447, 15.944, 12.330, 11.439, 0.388]),
    ("pr299", [21.639, 8.103, 10.467, 22.371, 15.244, 14.385, 10.965, 8.636, 0.905]),
    ("lin318", [18.356, 7.849, 6.377, 30.848, 14.114, 12.652, 9.398, 6.679, 5.501]),
    ("rd400", [15.032, 9.548, 8.278, 21.923, 10.844, 11.840, 7.506, 8.108, 3.423]),
    ("fl417", [12.469, 12.335, 10.606, 28.488, 8.962, 12.149, 8.473, 8.102, 7.394]),
    ("gr431", [19.672, 11.953, 6.942, 21.114, 11.550, 12.270, 7.867, 11.554, 4.196]),
    ("pr439", [15.983, 14.609, 9.024, 23.183, 13.395, 12.157, 9.439, 7.661, 7.104]),
    ("pcb442", [21.423, 9.935, 12.460, 16.403, 13.908, 13.233, 11.596, 10.172, 2.787]),
    ("d493", [16.550, 8.652, 9.618, 17.898, 9.872, 9.749, 8.443, 6.818, 4.352]),
    ("att532", [22.223, 11.013, 7.596, 25.022, 11.150, 11.629, 9.455, 8.441, 3.590]),
    ("u574", [22.276, 10.779, 9.023, 24.349, 9.638, 13.113, 9.776, 9.790, 4.495]),
    ("rat575", [18.529, 8.460, 10.350, 19.592, 8.962, 11.734, 9.671, 6.201, 2.761]),
    ("d657", [13.997, 7.949, 7.583, 23.008, 8.878, 12.009, 10.043, 7.587, 3.829]),
    ("gr666", [13.473, 13.241, 9.314, 24.339, 12.670, 13.736, 11.534, 9.635, 6.741]),
    ("u724", [17.836, 9.881, 7.590, 23.028, 9.952, 11.276, 9.308, 6.543, 3.054]),
    ("rat783", [22.062, 9.642, 7.047, 21.549, 11.617, 10.995, 8.877, 5.934, 4.956]),
    ("pr1002", [18.857, 10.763, 9.751, 20.484, 13.648, 13.238, 11.600, 8.529, 5.364]),
    ("u1060", [17.322, 10.732, 9.620, 21.754, 10.537, 13.128, 11.580, 8.954, 6.537]),
    ("vm1084", [23.083, 10.298, 9.615, 28.746, 12.485, 13.390, 11.253, 9.123, 6.951]),
    ("pcb1173", [17.792, 10.917, 9.567, 21.033, 14.631, 13.380, 11.821, 9.986, 5.790]),
    ("d1291", [21.917, 10.155, 5.711, 14.783, 9.653, 9.643, 7.573, 8.535, 3.081]),
    ("rl1304", [12.142, 10.610, 7.512, 25.060, 11.100, 11.821, 9.580, 9.506, 5.228]),
    ("rl1323", [14.876, 11.804, 7.467, 25.401, 8.385, 11.310, 9.789, 6.538, 3.695]),
    ("nrw1379", [22.314, 9.914, 8.842, 19.794, 11.351, 11.443, 9.856, 7.996, 3.655]),
    ("fl1400", [20.520, 11.432, 10.975, 27.267, 13.718, 14.541, 9.997, 11.273, 8.471]),
    ("u1432", [23.329, 10.407, 12.676, 14.967, 14.928, 14.669, 12.491, 8.440, 5.725]),
    ("fl1577", [16.976, 12.167, 12.634, 14.082, 12.351, 12.502, 9.084, 10.463, 4.373]),
    ("d1655", [15.282, 11.187, 9.503, 18.427, 10.368, 12.130, 9.478, 8.269, 5.637]),
    ("vm1748", [14.134, 11.912, 9.992, 24.520, 11.868, 13.757, 12.225, 9.302, 6.094]),
];

/// Published per-position TPR, FPR and PLR for MF and CW, positions 1..=5 then ">5".
pub const PUBLISHED_POSITION_RATES: [(&str, [(f64, f64, f64); 6]); 2] = [
    (
        "mf",
        [
            (0.9257, 0.6165, 1.50),
            (0.8321, 0.2957, 2.81),
            (0.5241, 0.0923, 5.68),
            (0.3847, 0.0479, 8.03),
            (0.2712, 0.0227, 11.95),
            (0.2272, 0.0001, 2272.0),
        ],
    ),
    (
        "cw",
        [
            (0.8279, 0.4656, 1.78),
            (0.7229, 0.2701, 2.68),
            (0.5503, 0.1504, 3.66),
            (0.4599, 0.104, 4.42),
            (0.3620, 0.0575, 6.30),
            (0.2901, 0.0001, 2901.0),
        ],
    ),
];

/// Column order of [`PUBLISHED_GAPS`].
pub const GAP_COLUMNS: [&str; 9] = ["mf", "cw", "f", "s", "y", "ae", "be", "ml-c", "ml-sc"];

pub fn published_gap(instance: &str, policy: &str) -> Option<f64> {
    let col = GAP_COLUMNS.iter().position(|&c| c == policy)?;
    PUBLISHED_GAPS.iter().find(|(n, _)| *n == instance).map(|(_, row)| row[col])
}

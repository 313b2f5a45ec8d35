//! Rows of the published table of finite-escape-time representatives.

/// `beta` is in the symbolic element syntax (or an exponent list for the
/// degree-74 row), `field` is a preset name, `expected = None` means infinite.
#[derive(Clone, Copy, Debug)]
pub struct Table2Row {
    pub beta: &'static str,
    pub field: &'static str,
    pub expected: Option<u64>,
}

/// The escape-time-5 representative in F_{2^74}.
pub const GAMMA: &str =
    "68,58,56,55,54,53,52,50,47,43,41,40,36,35,34,33,31,29,28,27,26,22,20,19,18,17,3,0";

pub const TABLE2: &[Table2Row] = &[
    Table2Row { beta: "0", field: "f2", expected: None },
    Table2Row { beta: "1", field: "f2", expected: Some(1) },
    Table2Row { beta: "\\alpha", field: "t2-d2", expected: Some(2) },
    Table2Row { beta: "\\alpha+1", field: "t2-d3", expected: Some(3) },
    Table2Row { beta: "\\alpha+1", field: "t2-d5", expected: Some(4) },
    Table2Row { beta: GAMMA, field: "t2-d74", expected: Some(5) },
    Table2Row { beta: "\\alpha^{7}+\\alpha^{6}+\\alpha^{5}+\\alpha^{4}+\\alpha^{3}+1", field: "t2-d11", expected: Some(6) },
    Table2Row { beta: "\\alpha^3+\\alpha", field: "t2-d20", expected: Some(7) },
    Table2Row { beta: "\\alpha^{5}+\\alpha^{4}+\\alpha^{3}+\\alpha^{2}", field: "t2-d10", expected: Some(10) },
    Table2Row { beta: "\\alpha^{4}+\\alpha^{3}+\\alpha+1", field: "t2-d7", expected: Some(12) },
    Table2Row { beta: "\\alpha^{5}+\\alpha^{2}+1", field: "t2-d13", expected: Some(13) },
    Table2Row { beta: "\\alpha^{7}+\\alpha^{5}+\\alpha^{2}+1", field: "t2-d13", expected: Some(17) },
    Table2Row { beta: "\\alpha^{6}+\\alpha^{5}+\\alpha+1", field: "t2-d10", expected: Some(21) },
    Table2Row { beta: "\\alpha^{7}+\\alpha^{5}+\\alpha^{4}+\\alpha^{2}+1", field: "t2-d12", expected: Some(23) },
    Table2Row { beta: "\\alpha^{4}+\\alpha^{3}+1", field: "t2-d10", expected: Some(25) },
    Table2Row { beta: "\\alpha^{7}+\\alpha^{6}+\\alpha^{5}+\\alpha^{3}+\\alpha^{2}+\\alpha", field: "t2-d13", expected: Some(27) },
    Table2Row { beta: "\\alpha^{10}+\\alpha^{5}+\\alpha^{4}+\\alpha^{2}", field: "t2-d13", expected: Some(28) },
    Table2Row { beta: "\\alpha^{9}+\\alpha^{8}+\\alpha^{7}+\\alpha^{6}+\\alpha^{2}+1", field: "t2-d12", expected: Some(29) },
    Table2Row { beta: "\\alpha^{6}+\\alpha^{5}+\\alpha^{4}", field: "t2-d10", expected: Some(31) },
    Table2Row { beta: "\\alpha^{10}+\\alpha^{9}+\\alpha^{4}+\\alpha^{2}", field: "t2-d15", expected: Some(33) },
    Table2Row { beta: "\\alpha^{8}+\\alpha^{3}+1", field: "t2-d14", expected: Some(34) },
    Table2Row { beta: "\\alpha^{10}+\\alpha^{8}+\\alpha^{4}+\\alpha^{3}+\\alpha^{2}+1", field: "t2-d15", expected: Some(35) },
    Table2Row { beta: "\\alpha^{4}+\\alpha^{3}+\\alpha^{2}+1", field: "t2-d12", expected: Some(37) },
    Table2Row { beta: "\\alpha^{10}+\\alpha^{8}+\\alpha^{6}+\\alpha^{5}+\\alpha^{4}+\\alpha^{3}+\\alpha^{2}+\\alpha+1", field: "t2-d13", expected: Some(39) },
    Table2Row { beta: "\\alpha^{9}+\\alpha^{8}+\\alpha^{7}+\\alpha^{3}+\\alpha^{2}+\\alpha+1", field: "t2-d14", expected: Some(40) },
    Table2Row { beta: "\\alpha^{8}+\\alpha^{6}+\\alpha", field: "t2-d14", expected: Some(43) },
    Table2Row { beta: "\\alpha^{11}+\\alpha^{9}+\\alpha^{6}+\\alpha^{5}+\\alpha^{4}+\\alpha^{2}+1", field: "t2-d15", expected: Some(46) },
    Table2Row { beta: "\\alpha^{10}+\\alpha^{9}+\\alpha^{8}+\\alpha^{7}+\\alpha^{5}+\\alpha^{4}+\\alpha+1", field: "t2-d14", expected: Some(47) },
    Table2Row { beta: "\\alpha^{3}", field: "t2-d10", expected: Some(49) },
    Table2Row { beta: "\\alpha^{11}+\\alpha^{9}+\\alpha^{7}+\\alpha^{4}+\\alpha^{3}", field: "t2-d14", expected: Some(53) },
    Table2Row { beta: "\\alpha^{8}+\\alpha^{6}+\\alpha^{4}+\\alpha^{3}+1", field: "t2-d15", expected: Some(54) },
    Table2Row { beta: "\\alpha^{7}+\\alpha^{5}+\\alpha^{4}+\\alpha^{3}", field: "t2-d12", expected: Some(59) },
    Table2Row { beta: "\\alpha^{10}+\\alpha^{6}+\\alpha+1", field: "t2-d14", expected: Some(63) },
    Table2Row { beta: "\\alpha^{10}+\\alpha^{8}+\\alpha^{7}+\\alpha^{6}+\\alpha^{4}+\\alpha^{3}+1", field: "t2-d14", expected: Some(66) },
    Table2Row { beta: "\\alpha^{7}+\\alpha^{6}+\\alpha^{4}+\\alpha^{3}+\\alpha^{2}+\\alpha", field: "t2-d12", expected: Some(67) },
    Table2Row { beta: "\\alpha^{5}+\\alpha^{4}", field: "t2-d12", expected: Some(74) },
    Table2Row { beta: "\\alpha^{7}", field: "t2-d10", expected: Some(76) },
    Table2Row { beta: "\\alpha^{12}+\\alpha^{8}+\\alpha^{6}+\\alpha^{4}+\\alpha^{3}+\\alpha^{2}+\\alpha+1", field: "t2-d15", expected: Some(77) },
    Table2Row { beta: "\\alpha^{4}+\\alpha^{3}+1", field: "t2-d12", expected: Some(98) },
    Table2Row { beta: "\\alpha^{10}+\\alpha^{9}+\\alpha^{8}+\\alpha^{6}+\\alpha^{5}+\\alpha^{4}+\\alpha+1", field: "t2-d13", expected: Some(104) },
    Table2Row { beta: "\\alpha^{9}+\\alpha^{7}+\\alpha^{6}+\\alpha^{3}+\\alpha^{2}+1", field: "t2-d13", expected: Some(116) },
    Table2Row { beta: "\\alpha^{10}+\\alpha^{9}+\\alpha^{8}+\\alpha^{7}+\\alpha^{5}+\\alpha^{3}+\\alpha+1", field: "t2-d15", expected: Some(128) },
    Table2Row { beta: "\\alpha^{2}+\\alpha", field: "t2-d13", expected: Some(130) },
    Table2Row { beta: "\\alpha^{5}+\\alpha^{4}+\\alpha^{3}+\\alpha", field: "t2-d15", expected: Some(131) },
    Table2Row { beta: "\\alpha^{9}+\\alpha^{7}+\\alpha^{5}+\\alpha^{3}+\\alpha", field: "t2-d11", expected: Some(133) },
    Table2Row { beta: "\\alpha^{6}+\\alpha^{5}+\\alpha^{3}+\\alpha^{2}+\\alpha", field: "t2-d12", expected: Some(141) },
    Table2Row { beta: "\\alpha^{9}+\\alpha^{8}+\\alpha^{6}+\\alpha^{4}+\\alpha^{2}+\\alpha", field: "t2-d15", expected: Some(144) },
    Table2Row { beta: "\\alpha^{10}+\\alpha^{8}+\\alpha^{7}+\\alpha^{6}+\\alpha^{5}+\\alpha^{4}+\\alpha", field: "t2-d14", expected: Some(152) },
    Table2Row { beta: "\\alpha^{9}+\\alpha^{8}+\\alpha^{7}+\\alpha^{6}+\\alpha^{5}+\\alpha^{4}+\\alpha^{2}", field: "t2-d13", expected: Some(157) },
    Table2Row { beta: "\\alpha^{10}+\\alpha^{8}+\\alpha^{7}+\\alpha^{6}+\\alpha^{3}", field: "t2-d14", expected: Some(162) },
    Table2Row { beta: "\\alpha^{12}+\\alpha^{10}+\\alpha^{8}+\\alpha^{6}+\\alpha^{2}+\\alpha+1", field: "t2-d15", expected: Some(164) },
    Table2Row { beta: "\\alpha^{10}+\\alpha^{8}+\\alpha^{7}+\\alpha^{5}+\\alpha^{4}+\\alpha^{3}+\\alpha", field: "t2-d15", expected: Some(169) },
    Table2Row { beta: "\\alpha^{8}+\\alpha^{7}+\\alpha^{4}+\\alpha^{3}+\\alpha^{2}+1", field: "t2-d15", expected: Some(174) },
    Table2Row { beta: "\\alpha^{7}+\\alpha^{5}+\\alpha^{4}", field: "t2-d15", expected: Some(176) },
    Table2Row { beta: "\\alpha^{9}+\\alpha^{7}+\\alpha^{6}+\\alpha^{5}+\\alpha^{2}+\\alpha", field: "t2-d14", expected: Some(188) },
    Table2Row { beta: "\\alpha^{8}+\\alpha^{7}+\\alpha^{4}+\\alpha^{2}+\\alpha", field: "t2-d15", expected: Some(258) },
    Table2Row { beta: "\\alpha^{7}+\\alpha^{3}", field: "t2-d15", expected: Some(277) },
    Table2Row { beta: "\\alpha^{11}+\\alpha^{8}+\\alpha^{6}+\\alpha^{4}", field: "t2-d14", expected: Some(280) },
    Table2Row { beta: "\\alpha^{12}+\\alpha^{6}+\\alpha+1", field: "t2-d15", expected: Some(323) },
    Table2Row { beta: "\\alpha^{11}+\\alpha^{9}+\\alpha^{7}+\\alpha^{6}+\\alpha^{5}+\\alpha^{4}+\\alpha^{3}", field: "t2-d15", expected: Some(427) },
];

/// Degrees of the irreducible factors of G_n, n = 1..7.
pub const TABLE1: &[&[usize]] = &[
    &[1],
    &[2, 6],
    &[3, 7, 13, 41],
    &[5, 12, 42, 112, 121, 220],
    &[74, 4022],
    &[11, 15, 45, 143, 229, 515, 708, 1704, 3146, 26252],
    &[20, 76, 1544, 1640, 84207, 174657],
];

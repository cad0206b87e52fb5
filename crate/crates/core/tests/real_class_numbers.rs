//! Class numbers of real quadratic fields against values computed
//! independently from the analytic class number formula.

use std::collections::BTreeMap;

use census_core::arith::primes_in;
use census_core::quadratic::class_number_real;

/// Every prime `p < 10000` with `h(Q(√p)) > 1`.
const NONTRIVIAL: [(u64, u64); 200] = [
    (79, 3),
    (223, 3),
    (229, 3),
    (257, 3),
    (359, 3),
    (401, 5),
    (439, 5),
    (443, 3),
    (499, 5),
    (577, 7),
    (659, 3),
    (727, 5),
    (733, 3),
    (761, 3),
    (839, 3),
    (1009, 7),
    (1087, 7),
    (1091, 3),
    (1093, 5),
    (1129, 9),
    (1171, 3),
    (1223, 3),
    (1229, 3),
    (1297, 11),
    (1327, 5),
    (1367, 3),
    (1373, 3),
    (1429, 5),
    (1489, 3),
    (1523, 3),
    (1567, 3),
    (1601, 7),
    (1627, 3),
    (1787, 3),
    (1811, 3),
    (1847, 3),
    (1901, 3),
    (1907, 3),
    (1987, 3),
    (2027, 5),
    (2029, 7),
    (2081, 5),
    (2089, 3),
    (2099, 3),
    (2143, 3),
    (2153, 5),
    (2207, 3),
    (2213, 3),
    (2251, 7),
    (2399, 5),
    (2459, 3),
    (2467, 7),
    (2543, 3),
    (2557, 3),
    (2659, 3),
    (2677, 3),
    (2711, 3),
    (2713, 3),
    (2777, 3),
    (2857, 3),
    (2917, 3),
    (2971, 3),
    (3023, 3),
    (3121, 5),
    (3137, 9),
    (3163, 3),
    (3181, 5),
    (3221, 3),
    (3229, 3),
    (3251, 5),
    (3253, 5),
    (3391, 3),
    (3719, 9),
    (3739, 3),
    (3803, 3),
    (3877, 3),
    (3889, 3),
    (3967, 5),
    (4001, 3),
    (4139, 7),
    (4159, 3),
    (4229, 7),
    (4271, 5),
    (4283, 3),
    (4357, 5),
    (4409, 9),
    (4441, 5),
    (4481, 3),
    (4493, 3),
    (4591, 5),
    (4597, 3),
    (4649, 3),
    (4651, 3),
    (4729, 3),
    (4759, 13),
    (4889, 5),
    (4933, 3),
    (5011, 3),
    (5039, 7),
    (5081, 3),
    (5099, 3),
    (5107, 5),
    (5261, 3),
    (5273, 7),
    (5281, 3),
    (5297, 3),
    (5303, 3),
    (5333, 3),
    (5417, 7),
    (5431, 3),
    (5477, 3),
    (5503, 3),
    (5521, 9),
    (5527, 5),
    (5623, 9),
    (5683, 3),
    (5711, 5),
    (5741, 3),
    (5743, 7),
    (5821, 3),
    (5827, 7),
    (5903, 3),
    (5927, 5),
    (6053, 3),
    (6113, 5),
    (6133, 3),
    (6151, 7),
    (6311, 3),
    (6427, 3),
    (6481, 5),
    (6563, 5),
    (6571, 3),
    (6637, 3),
    (6779, 5),
    (6791, 3),
    (6949, 5),
    (6997, 3),
    (7019, 3),
    (7057, 21),
    (7229, 5),
    (7331, 5),
    (7459, 3),
    (7481, 3),
    (7537, 3),
    (7573, 9),
    (7591, 5),
    (7639, 3),
    (7643, 3),
    (7673, 3),
    (7753, 3),
    (7817, 5),
    (7873, 9),
    (7879, 3),
    (7883, 3),
    (7919, 7),
    (8017, 3),
    (8059, 11),
    (8069, 3),
    (8101, 13),
    (8311, 7),
    (8363, 3),
    (8447, 3),
    (8501, 5),
    (8539, 5),
    (8543, 3),
    (8581, 3),
    (8597, 3),
    (8623, 3),
    (8647, 13),
    (8689, 5),
    (8707, 5),
    (8713, 3),
    (8731, 3),
    (8761, 27),
    (8803, 5),
    (8837, 3),
    (8863, 3),
    (8999, 3),
    (9029, 7),
    (9049, 7),
    (9133, 3),
    (9151, 3),
    (9181, 5),
    (9281, 3),
    (9293, 3),
    (9323, 3),
    (9371, 5),
    (9413, 3),
    (9419, 3),
    (9431, 5),
    (9467, 3),
    (9479, 3),
    (9539, 7),
    (9551, 3),
    (9749, 3),
    (9803, 5),
    (9829, 5),
    (9833, 3),
    (9871, 15),
    (9907, 3),
];

#[test]
fn real_class_numbers_below_ten_thousand() {
    let table: BTreeMap<u64, u64> = NONTRIVIAL.into_iter().collect();
    for p in primes_in(2, 9999) {
        let want = table.get(&p).copied().unwrap_or(1);
        assert_eq!(class_number_real(p).unwrap(), want, "p = {p}");
    }
}

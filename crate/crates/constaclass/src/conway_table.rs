// (p, m, modulus coefficients ascending), all p^m <= 2^16 with p <= 97.
// Generated by conway::search_conway (see the ignored dump_conway_table test).
pub(crate) const CONWAY_TABLE: &[(u64, u32, &[u64])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 1, 1, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (2, 10, &[1, 1, 1, 1, 0, 1, 1, 0, 0, 0, 1]),
    (2, 11, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 12, &[1, 1, 0, 1, 0, 1, 1, 1, 0, 0, 0, 0, 1]),
    (2, 13, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 14, &[1, 0, 0, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (2, 15, &[1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, 16, &[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (3, 6, &[2, 2, 1, 0, 2, 0, 1]),
    (3, 7, &[1, 0, 2, 0, 0, 0, 0, 1]),
    (3, 8, &[2, 2, 2, 0, 1, 2, 0, 0, 1]),
    (3, 9, &[1, 1, 2, 2, 0, 0, 0, 0, 0, 1]),
    (3, 10, &[2, 1, 0, 0, 2, 2, 2, 0, 0, 0, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (5, 4, &[2, 4, 4, 0, 1]),
    (5, 5, &[3, 4, 0, 0, 0, 1]),
    (5, 6, &[2, 0, 1, 4, 1, 0, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (7, 3, &[4, 0, 6, 1]),
    (7, 4, &[3, 4, 5, 0, 1]),
    (7, 5, &[4, 1, 0, 0, 0, 1]),
    (11, 1, &[9, 1]),
    (11, 2, &[2, 7, 1]),
    (11, 3, &[9, 2, 0, 1]),
    (11, 4, &[2, 10, 8, 0, 1]),
    (13, 1, &[11, 1]),
    (13, 2, &[2, 12, 1]),
    (13, 3, &[11, 2, 0, 1]),
    (13, 4, &[2, 12, 3, 0, 1]),
    (17, 1, &[14, 1]),
    (17, 2, &[3, 16, 1]),
    (17, 3, &[14, 1, 0, 1]),
    (19, 1, &[17, 1]),
    (19, 2, &[2, 18, 1]),
    (19, 3, &[17, 4, 0, 1]),
    (23, 1, &[18, 1]),
    (23, 2, &[5, 21, 1]),
    (23, 3, &[18, 2, 0, 1]),
    (29, 1, &[27, 1]),
    (29, 2, &[2, 24, 1]),
    (29, 3, &[27, 2, 0, 1]),
    (31, 1, &[28, 1]),
    (31, 2, &[3, 29, 1]),
    (31, 3, &[28, 1, 0, 1]),
    (37, 1, &[35, 1]),
    (37, 2, &[2, 33, 1]),
    (37, 3, &[35, 6, 0, 1]),
    (41, 1, &[35, 1]),
    (41, 2, &[6, 38, 1]),
    (43, 1, &[40, 1]),
    (43, 2, &[3, 42, 1]),
    (47, 1, &[42, 1]),
    (47, 2, &[5, 45, 1]),
    (53, 1, &[51, 1]),
    (53, 2, &[2, 49, 1]),
    (59, 1, &[57, 1]),
    (59, 2, &[2, 58, 1]),
    (61, 1, &[59, 1]),
    (61, 2, &[2, 60, 1]),
    (67, 1, &[65, 1]),
    (67, 2, &[2, 63, 1]),
    (71, 1, &[64, 1]),
    (71, 2, &[7, 69, 1]),
    (73, 1, &[68, 1]),
    (73, 2, &[5, 70, 1]),
    (79, 1, &[76, 1]),
    (79, 2, &[3, 78, 1]),
    (83, 1, &[81, 1]),
    (83, 2, &[2, 82, 1]),
    (89, 1, &[86, 1]),
    (89, 2, &[3, 82, 1]),
    (97, 1, &[92, 1]),
    (97, 2, &[5, 96, 1]),
];

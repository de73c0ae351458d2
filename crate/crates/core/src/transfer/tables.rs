//! Transcribed matrix entries, 1-based `(row, col)` as printed.

const CHI: &str = "((1-a)*(1-c)*d*e+a*c*(1-d)*(1-e)-a*c*d*e)";

/// K4-ladder two-terminal entries; `X` stands for chi.
pub(super) const K4_ENTRIES: &[((usize, usize), &str)] = &[
    ((1, 1), "(a+b*e*T-a*b*e*T)*S"),
    ((1, 2), "(d+b*c*T-d*b*c*T)*S"),
    ((1, 3), "a*d*S+b*(X+c*e)*S*T"),
    ((1, 4), "a*e*m(4,2)"),
    ((1, 5), "c*d*m(4,1)"),
    ((2, 1), "(e+b*a*S-e*b*a*S)*T"),
    ((2, 2), "(c+b*d*S-c*b*d*S)*T"),
    ((2, 3), "c*e*T+b*(X+a*d)*S*T"),
    ((2, 4), "a*e*m(5,2)"),
    ((2, 5), "c*d*m(5,1)"),
    ((3, 1), "-(a*b+a*e+b*e-2*a*b*e)*S*T"),
    ((3, 2), "-(b*c+b*d+c*d-2*b*c*d)*S*T"),
    ((3, 3), "((1-2*b)*X-b*(c*e+a*d))*S*T"),
    ((3, 4), "-m(1,4)-m(2,4)"),
    ((3, 5), "-m(1,5)-m(2,5)"),
    ((4, 1), "(1-a)*(1-b)*e*S*T"),
    ((4, 2), "(1-b)*c*(1-d)*S*T"),
    ((4, 3), "(1-b)*(X+c*e)*S*T"),
    ((4, 4), "-m(1,4)"),
    ((4, 5), "-m(1,5)"),
    ((5, 1), "a*(1-b)*(1-e)*S*T"),
    ((5, 2), "(1-b)*(1-c)*d*S*T"),
    ((5, 3), "(1-b)*(X+a*d)*S*T"),
    ((5, 4), "-m(2,4)"),
    ((5, 5), "-m(2,5)"),
];

pub(super) fn k4_source(s: &str) -> String {
    s.replace('X', CHI)
}

/// K4 all-terminal entries (`x//y = x + y - x*y`, node reliabilities factored out).
/// All-terminal cell matrix in the basis (all nodes connected, two components split at S/T).
pub(super) const K4_ALL_ENTRIES: &[((usize, usize), &str)] = &[
    ((1, 1), "(a+d-a*d)*(c+e-c*e)*(1-b)+(1-(1-a)*(1-c)*(1-d)*(1-e))*b"),
    ((1, 2), "(c*d*e+a*d*e+a*c*e+a*c*d-3*a*c*d*e)*(1-b)+(a+e-a*e)*(c+d-c*d)*b"),
    ((2, 1), "((a+d-a*d)*(1-c)*(1-e)+(1-a)*(1-d)*(c+e-c*e))*(1-b)"),
    ((2, 2), "(c+d-2*c*d)*(a+e-2*a*e)*(1-b)"),
];

/// The printed form of the all-terminal matrix. It reproduces the uniform sequence
/// but not element-wise reliabilities.
pub(super) const K4_ALL_PRINTED: &[((usize, usize), &str)] = &[
    ((1, 1), "((a+e)*(c+d)-2*a*c*d*e)*(1-b)+((a+e-a*e)+(c+d-c*d))*b"),
    ((1, 2), "(c*d*e+a*d*e+a*c*e+a*c*d-3*a*c*d*e)*(1-b)+(a+e-a*e)*(c+d-c*d)*b"),
    ((2, 1), "((a+c-a*c)+(d+e-d*e)-2*(a*e+c*d-a*e*c*d))*(1-b)-m(1,1)"),
    ((2, 2), "(c+d-2*c*d)*(a+e-2*a*e)*(1-b)-m(1,2)"),
];

/// The printed chain also lists `m(8,3) = m(13,2)`. It contradicts `m(13,2) = m(8,2)`
/// and `m(13,3) = -m(4,3)`, and the oracle rejects it, so it is not part of the table.
pub(super) const K3_REJECTED_ALIAS: ((usize, usize), (usize, usize)) = ((8, 3), (13, 2));

/// Base entries `((row, col), expression)`, 1-based as printed.
pub(super) const K3_BASE: &[((usize, usize), &str)] = &[
    ((1, 1), "a*S"),
    ((1, 2), "c*S*T*(b+d*f*U-b*d*f*U)"),
    ((1, 3), "e*S*U*(f+b*d*T-b*d*f*T)"),
    ((1, 4), "a*m(1,2)"),
    ((1, 5), "a*m(1,3)"),
    ((1, 6), "a*c*e*S*T*U*(d+b*f-b*d*f)"),
    ((1, 7), "c*e*S*T*U*(b*d+b*f+d*f-2*b*d*f)"),
    ((1, 8), "a*m(1,7)"),
    ((2, 1), "a*S*T*(b+d*f*U-b*d*f*U)"),
    ((2, 2), "c*T"),
    ((2, 3), "e*T*U*(d+b*f*S-b*d*f*S)"),
    ((2, 5), "a*e*S*T*U*(b*d+b*f+d*f-2*b*d*f)"),
    ((2, 9), "c*m(2,3)"),
    ((2, 10), "a*(1-b)*c*(1-d)*e*f*S*T*U"),
    ((3, 1), "a*S*U*(f+b*d*T-b*d*f*T)"),
    ((3, 2), "c*T*U*(d+b*f*S-b*d*f*S)"),
    ((3, 3), "e*U"),
    ((3, 4), "a*c*S*T*U*(b*d+b*f+d*f-2*b*d*f)"),
    ((3, 12), "a*c*e*S*T*U*(b+d*f-b*d*f)"),
    ((4, 3), "-e*S*T*U*(b*d+b*f+d*f-2*b*d*f)"),
    ((4, 4), "a*c*S*T*(1-2*b-2*d*f*U+2*b*d*f*U)"),
    ((4, 5), "a*e*S*T*U*(d-2*b*d-b*f-2*d*f+3*b*d*f)"),
    ((4, 6), "a*c*e*S*T*U*(-b*d+f-2*b*f-2*d*f+3*b*d*f)"),
    ((4, 8), "a*c*e*S*T*U*(d-2*b*d+f-2*b*f-3*d*f+4*b*d*f)"),
    ((4, 9), "(1-b)*c*(1-d)*e*f*S*T*U"),
    ((5, 2), "-c*S*T*U*(b*d+b*f+d*f-2*b*d*f)"),
    ((5, 4), "a*c*S*T*U*(d-2*b*d-b*f-2*d*f+3*b*d*f)"),
    ((5, 5), "a*e*(1-f)*S*U*(1-b*d*T)"),
    ((5, 6), "a*b*c*(1-d)*e*(1-f)*S*T*U"),
    ((5, 7), "c*(b+d-2*b*d)*e*(1-f)*S*T*U"),
    ((5, 8), "a*m(5,7)"),
    ((5, 9), "-c*e*S*T*U*(d+b*f-b*d*f)"),
    ((6, 2), "(1-b)*c*(1-d)*f*S*T*U"),
    ((6, 3), "b*(1-d)*e*(1-f)*S*T*U"),
    ((6, 4), "a*m(6,2)"),
    ((6, 5), "a*m(6,3)"),
    ((6, 6), "a*c*(1-d)*e*(1-b*f)*S*T*U"),
    ((6, 7), "c*(1-d)*e*(b+f-2*b*f)*S*T*U"),
    ((6, 8), "a*m(6,7)"),
    ((7, 1), "-a*S*T*U*(b*d+b*f+d*f-2*b*d*f)"),
    ((7, 4), "a*c*S*T*U*(-b*d+f-2*b*f-2*d*f+3*b*d*f)"),
    ((7, 5), "a*(1-d)*e*(b+f-2*b*f)*S*T*U"),
    ((7, 9), "c*e*T*U*(1-2*d-2*b*f*S+2*b*d*f*S)"),
    ((7, 11), "-a*e*S*T*U*(b*d+f-b*d*f)"),
    ((8, 2), "-c*S*T*U*(-b*d+f-2*b*f-2*d*f+3*b*d*f)"),
    ((8, 3), "-e*S*T*U*(b-2*b*d-2*b*f-d*f+3*b*d*f)"),
    ((8, 4), "-a*c*S*T*U*(d-2*b*d+2*f-3*b*f-4*d*f+5*b*d*f)"),
    ((8, 5), "-a*e*S*T*U*(2*b+d-3*b*d+f-3*b*f-2*d*f+4*b*d*f)"),
    ((8, 6), "-2*a*m(6,7)"),
    ((8, 7), "-c*e*S*T*U*(2*b+d-3*b*d+f-3*b*f-2*d*f+4*b*d*f)"),
    ((8, 8), "-a*c*e*S*T*U*(-1+3*b+2*d-4*b*d+3*f-5*b*f-4*d*f+6*b*d*f)"),
    ((8, 9), "-c*e*S*T*U*(-d+f-2*b*f-d*f+2*b*d*f)"),
    ((10, 1), "a*(1-b)*d*(1-f)*S*T*U"),
    ((10, 4), "c*m(10,1)"),
    ((10, 5), "a*(b+d-2*b*d)*e*(1-f)*S*T*U"),
    ((10, 9), "b*c*(1-d)*e*(1-f)*S*T*U"),
    ((10, 10), "a*(1-b)*c*(1-d)*e*(1-f)*S*T*U"),
    ((11, 12), "a*(1-b)*c*d*e*(1-f)*S*T*U"),
    ((12, 4), "a*(1-b)*c*(d+f-2*d*f)*S*T*U"),
    ((12, 11), "e*m(10,1)"),
    ((12, 12), "a*(1-b)*c*e*(1-d*f)*S*T*U"),
    ((12, 13), "e*m(12,4)"),
    ((13, 1), "-a*S*T*U*(d-2*b*d-b*f-2*d*f+3*b*d*f)"),
    ((13, 4), "-a*c*S*T*U*(2*d-3*b*d+2*f-3*b*f-5*d*f+6*b*d*f)"),
    ((13, 9), "c*(1-d)*e*(-b-2*f+3*b*f)*S*T*U"),
    ((13, 13), "-a*c*e*S*T*U*(-1+2*b+2*d-3*b*d+2*f-3*b*f-3*d*f+4*b*d*f)"),
];

/// Chained equalities `(target, sign, source)`.
pub(super) const K3_ALIASES: &[((usize, usize), i64, (usize, usize))] = &[
    ((4, 2), -1, (1, 2)),
    ((5, 3), -1, (1, 3)),
    ((11, 3), -1, (1, 3)),
    ((2, 4), 1, (1, 4)),
    ((3, 11), 1, (1, 5)),
    ((5, 11), -1, (1, 5)),
    ((11, 5), -1, (1, 5)),
    ((11, 6), -1, (1, 6)),
    ((13, 7), 1, (1, 7)),
    ((4, 7), -1, (1, 7)),
    ((11, 7), -1, (1, 7)),
    ((2, 6), 1, (1, 8)),
    ((2, 8), 1, (1, 8)),
    ((3, 13), 1, (1, 8)),
    ((8, 13), 1, (1, 8)),
    ((5, 13), -1, (1, 8)),
    ((7, 13), -1, (1, 8)),
    ((9, 6), -1, (1, 8)),
    ((9, 8), -1, (1, 8)),
    ((11, 8), -1, (1, 8)),
    ((4, 1), -1, (2, 1)),
    ((7, 3), -1, (2, 3)),
    ((9, 3), -1, (2, 3)),
    ((9, 5), -1, (2, 5)),
    ((3, 9), 1, (2, 9)),
    ((8, 10), 1, (2, 10)),
    ((9, 12), 1, (2, 10)),
    ((13, 10), 1, (2, 10)),
    ((4, 10), -1, (2, 10)),
    ((7, 10), -1, (2, 10)),
    ((9, 10), -1, (2, 10)),
    ((5, 1), -1, (3, 1)),
    ((11, 1), -1, (3, 1)),
    ((7, 2), -1, (3, 2)),
    ((9, 2), -1, (3, 2)),
    ((8, 12), 1, (3, 12)),
    ((5, 12), -1, (3, 12)),
    ((7, 12), -1, (3, 12)),
    ((13, 3), -1, (4, 3)),
    ((13, 5), -1, (4, 5)),
    ((13, 6), -1, (4, 6)),
    ((13, 8), -1, (4, 8)),
    ((12, 9), 1, (4, 9)),
    ((11, 2), 1, (5, 2)),
    ((11, 4), 1, (5, 4)),
    ((11, 11), 1, (5, 5)),
    ((10, 6), 1, (5, 8)),
    ((10, 8), 1, (5, 8)),
    ((11, 13), 1, (5, 8)),
    ((12, 2), 1, (6, 2)),
    ((10, 3), 1, (6, 3)),
    ((9, 11), 1, (6, 5)),
    ((7, 6), 1, (6, 8)),
    ((7, 8), 1, (6, 8)),
    ((9, 13), 1, (6, 8)),
    ((9, 1), 1, (7, 1)),
    ((8, 1), -1, (7, 1)),
    ((9, 4), 1, (7, 4)),
    ((9, 9), 1, (7, 9)),
    ((8, 11), -1, (7, 11)),
    ((13, 2), 1, (8, 2)),
    ((12, 1), 1, (10, 1)),
    ((13, 11), -1, (10, 5)),
    ((11, 9), 1, (10, 9)),
    ((13, 12), -1, (12, 13)),
];

/// Entries listed as zero.
pub(super) const K3_ZEROS: &[(usize, usize)] = &[
    (1, 9), (1, 10), (1, 11), (1, 12), (1, 13), (2, 7), (2, 11), (2, 12), (2, 13), (3, 5), (3, 6), (3, 7), (3, 8), (3, 10), (4, 11), (4, 12), (4, 13), (5, 10), (6, 1), (6, 9), (6, 10), (6, 11), (6, 12), (6, 13), (7, 7), (9, 7), (10, 2), (10, 7), (10, 11), (10, 12), (10, 13), (11, 10), (12, 3), (12, 5), (12, 6), (12, 7), (12, 8), (12, 10),
];

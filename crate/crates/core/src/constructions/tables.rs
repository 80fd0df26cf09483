//! Literal constraint tables, in the row and column order they are printed in.
//!
//! State indices: `A = 0, B = 1, C = 2`. Boolean tables are indexed by
//! position in [`EVEN_CODES`] / [`ODD_CODES`] / [`S_FLANKS`], not by code value.

use crate::model::Value;

/// Rows `A, B, C` (three-state variable), columns `A, B` (two-state variable).
pub const L: [[Value; 2]; 3] = [[0, 2], [1, 1], [2, 0]];

/// Rows `A, B` (two-state variable), columns `A, B, C` (three-state variable).
pub const M: [[Value; 3]; 2] = [[0, 1, 0], [1, 0, 1]];

/// Non-zero part of the odd-position minimisation constraint:
/// rows are the left neighbor, columns the right neighbor, both in `A, B, C`.
pub const P: [[Value; 3]; 3] = [[0, 2, 0], [1, 1, 1], [2, 0, 2]];

/// Even-position minimisation table for `σ_AB`; rows left neighbor `A, B`,
/// columns right neighbor `A, B`.
pub fn q(m: Value) -> [[Value; 2]; 2] {
    [[0, 2 * m + 1], [m, m + 1]]
}

/// As [`q`], for `σ_BC`.
pub fn r(m: Value) -> [[Value; 2]; 2] {
    [[2 * m + 1, 0], [m + 1, m]]
}

/// Unary bonus on odd expanded domains `A, B, σ_AB`.
pub const U_HAT: [Value; 3] = [0, 0, 1];

/// Unary bonus on even expanded domains `A, B, C, σ_AB, σ_BC`.
pub const V_HAT: [Value; 5] = [0, 0, 0, 1, 1];

/// The matrix whose additive (rank-1) decomposition is shown to be impossible.
pub const P_NONADDITIVE: [[Value; 3]; 3] = [[0, 1, 2], [2, 1, 0], [0, 1, 2]];

/// The two dual-code matrices for an odd `σ_AB`, before the `(m_l + 1)` factor:
/// code `00`, then code `11`. Their elementwise maximum is [`P`].
pub const P_DUAL: [[[Value; 3]; 3]; 2] = [
    [[0, -2, 0], [1, -1, 1], [2, 0, 2]],
    [[0, 2, 0], [-1, 1, -1], [-2, 0, -2]],
];

/// Column parts `a_s` and row parts `b_s` of the dual-code matrices, so that
/// `P_DUAL[s][u][v] = DUAL_COLUMN[s][u] + DUAL_ROW[s][v]`.
pub const DUAL_COLUMN: [[Value; 3]; 2] = [[0, 1, 2], [2, 1, 0]];
pub const DUAL_ROW: [[Value; 3]; 2] = [[0, -2, 0], [-2, 0, -2]];

/// Three-bit codes in printed order; first bit most significant.
pub const EVEN_CODES: [u32; 8] = [0b100, 0b010, 0b001, 0b110, 0b101, 0b011, 0b000, 0b111];

/// Two-bit codes in printed order.
pub const ODD_CODES: [u32; 4] = [0b10, 0b01, 0b00, 0b11];

/// Column order of the Boolean `S` table: (left flank bit, right flank bit).
pub const S_FLANKS: [(u32, u32); 4] = [(0, 0), (1, 0), (0, 1), (1, 1)];

/// Position of a code in [`EVEN_CODES`].
pub fn even_row(code: u32) -> usize {
    EVEN_CODES
        .iter()
        .position(|&c| c == code)
        .expect("three-bit code")
}

/// Position of a code in [`ODD_CODES`].
pub fn odd_col(code: u32) -> usize {
    ODD_CODES
        .iter()
        .position(|&c| c == code)
        .expect("two-bit code")
}

/// Boolean `L`: rows even codes, columns odd codes.
pub fn l_tilde(m: Value) -> [[Value; 4]; 8] {
    let c = m + 1;
    let mut t = [[0; 4]; 8];
    t[0] = [0, 2 * c, 0, 0];
    t[1] = [c, c, 0, 0];
    t[2] = [2 * c, 0, 0, 0];
    t
}

/// Column half of the dual-code split: rows even codes, columns odd codes.
pub fn t_minus(m: Value) -> [[Value; 4]; 8] {
    let c = m + 1;
    let mut t = [[0; 4]; 8];
    t[0] = [0, 0, 0, 2 * c];
    t[1] = [0, 0, c, c];
    t[2] = [0, 0, 2 * c, 0];
    t
}

/// Row half of the dual-code split: rows odd codes, columns even codes.
/// The printed table carries a leading `-2(m_l + 1)` factor, applied here.
pub fn t_plus(m: Value) -> [[Value; 8]; 4] {
    let f = -2 * (m + 1);
    let mut t = [[0; 8]; 4];
    t[2] = [0, f, 0, 0, 0, 0, 0, 0];
    t[3] = [f, 0, f, 0, 0, 0, 0, 0];
    t
}

/// Boolean `S`: rows even codes (the centre collection), columns [`S_FLANKS`].
pub fn s_tilde(m: Value) -> [[Value; 4]; 8] {
    let mut t = [[0; 4]; 8];
    t[3] = [2 * m + 1, m + 1, 0, m];
    t[5] = [0, m, 2 * m + 1, m + 1];
    t
}

/// Pattern of the adjacent-intermediates penalty, before its `-f_max(n)`
/// factor: rows odd codes, columns even codes.
pub const J_TILDE: [[Value; 8]; 4] = [
    [0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 1, 0, 1, 0, 0],
    [0, 0, 0, 1, 0, 1, 0, 0],
];

/// Unary on odd collection `G_{2l+1}`, columns odd codes.
pub fn u_tilde(n: Value, l: Value) -> [Value; 4] {
    let w = n - 2 * l;
    [0, 0, w, w]
}

/// Unary on even collection `G_{2l}`, columns even codes.
pub fn v_tilde(n: Value, l: Value) -> [Value; 8] {
    let w = n - 2 * l + 1;
    [0, 0, 0, w, 0, w, 0, 0]
}

/// Boolean `M`, reconstructed as the lift of [`M`] (weight `m_l`): rows odd
/// codes, columns even codes, zero unless both sides are main states.
pub fn m_tilde(m: Value) -> [[Value; 8]; 4] {
    let mut t = [[0; 8]; 4];
    for (a, row) in M.iter().enumerate() {
        for (b, &v) in row.iter().enumerate() {
            t[a][b] = m * v;
        }
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_three_tables() {
        assert_eq!(L, [[0, 2], [1, 1], [2, 0]]);
        assert_eq!(M, [[0, 1, 0], [1, 0, 1]]);
        // Every table is zero at (A, A), so the all-A assignment has fitness 0.
        assert_eq!((L[0][0], M[0][0], P[0][0]), (0, 0, 0));
    }

    #[test]
    fn q_and_r_at_small_m() {
        assert_eq!(q(1), [[0, 3], [1, 2]]);
        assert_eq!(r(1), [[3, 0], [2, 1]]);
        assert_eq!(q(5), [[0, 11], [5, 6]]);
        assert_eq!(r(5), [[11, 0], [6, 5]]);
    }

    #[test]
    fn boolean_tables_as_printed() {
        let m = 5;
        assert_eq!(
            l_tilde(m),
            [
                [0, 12, 0, 0],
                [6, 6, 0, 0],
                [12, 0, 0, 0],
                [0; 4],
                [0; 4],
                [0; 4],
                [0; 4],
                [0; 4]
            ]
        );
        assert_eq!(
            t_minus(m),
            [
                [0, 0, 0, 12],
                [0, 0, 6, 6],
                [0, 0, 12, 0],
                [0; 4],
                [0; 4],
                [0; 4],
                [0; 4],
                [0; 4]
            ]
        );
        assert_eq!(
            t_plus(m),
            [
                [0; 8],
                [0; 8],
                [0, -12, 0, 0, 0, 0, 0, 0],
                [-12, 0, -12, 0, 0, 0, 0, 0]
            ]
        );
        assert_eq!(
            s_tilde(m),
            [
                [0; 4],
                [0; 4],
                [0; 4],
                [11, 6, 0, 5],
                [0; 4],
                [0, 5, 11, 6],
                [0; 4],
                [0; 4]
            ]
        );
        assert_eq!(u_tilde(7, 2), [0, 0, 3, 3]);
        assert_eq!(v_tilde(7, 2), [0, 0, 0, 4, 0, 4, 0, 0]);
        assert_eq!(J_TILDE[2], [0, 0, 0, 1, 0, 1, 0, 0]);
        assert_eq!(J_TILDE[3], J_TILDE[2]);
    }

    #[test]
    fn code_orders() {
        assert_eq!(even_row(0b110), 3);
        assert_eq!(even_row(0b011), 5);
        assert_eq!(odd_col(0b00), 2);
        assert_eq!(odd_col(0b11), 3);
    }

    #[test]
    fn dual_split_is_additive_and_maxes_to_p() {
        for s in 0..2 {
            for u in 0..3 {
                for v in 0..3 {
                    assert_eq!(P_DUAL[s][u][v], DUAL_COLUMN[s][u] + DUAL_ROW[s][v]);
                }
            }
        }
        for u in 0..3 {
            for v in 0..3 {
                assert_eq!(P_DUAL[0][u][v].max(P_DUAL[1][u][v]), P[u][v]);
            }
        }
    }

    #[test]
    fn boolean_split_reproduces_dual_matrices() {
        // T- column (00 / 11) plus T+ row (00 / 11) equals (m+1) * P_DUAL on mains.
        for m in [1, 5, 13, 1021] {
            let (tm, tp) = (t_minus(m), t_plus(m));
            for (s, col) in [(0usize, 2usize), (1, 3)] {
                for u in 0..3 {
                    for v in 0..3 {
                        assert_eq!(tm[u][col] + tp[col][v], (m + 1) * P_DUAL[s][u][v]);
                    }
                }
            }
        }
    }

    #[test]
    fn s_tilde_columns_match_q_and_r() {
        // Left flank bit 0 is A, right flank bit 1 is A.
        for m in [1, 5, 13] {
            let s = s_tilde(m);
            for (j, &(lb, rb)) in S_FLANKS.iter().enumerate() {
                let (u, v) = (lb as usize, 1 - rb as usize);
                assert_eq!(s[3][j], q(m)[u][v]);
                assert_eq!(s[5][j], r(m)[u][v]);
            }
        }
    }
}

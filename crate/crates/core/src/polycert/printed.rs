/// Printed expansion of the reduced resultant: `(num, den, [ρ, α, β, δ] exponents)`.
pub const RTILDE_TERMS: [(i64, i64, [u32; 4]); 173] = [
    (36, 1, [0, 4, 4, 2]),
    (144, 1, [1, 4, 4, 2]),
    (216, 1, [2, 4, 4, 2]),
    (144, 1, [3, 4, 4, 2]),
    (36, 1, [4, 4, 4, 2]),
    (45, 1, [0, 3, 5, 1]),
    (-72, 1, [0, 4, 3, 2]),
    (-6, 1, [0, 4, 4, 1]),
    (45, 1, [0, 5, 3, 1]),
    (-72, 1, [1, 3, 4, 2]),
    (135, 1, [1, 3, 5, 1]),
    (-216, 1, [1, 4, 3, 2]),
    (-18, 1, [1, 4, 4, 1]),
    (135, 1, [1, 5, 3, 1]),
    (-216, 1, [2, 3, 4, 2]),
    (135, 1, [2, 3, 5, 1]),
    (-216, 1, [2, 4, 3, 2]),
    (-18, 1, [2, 4, 4, 1]),
    (135, 1, [2, 5, 3, 1]),
    (-216, 1, [3, 3, 4, 2]),
    (45, 1, [3, 3, 5, 1]),
    (-72, 1, [3, 4, 3, 2]),
    (-6, 1, [3, 4, 4, 1]),
    (45, 1, [3, 5, 3, 1]),
    (-72, 1, [4, 3, 4, 2]),
    (15, 1, [0, 2, 6, 0]),
    (-69, 1, [0, 3, 4, 1]),
    (-4, 1, [0, 3, 5, 0]),
    (108, 1, [0, 4, 2, 2]),
    (60, 1, [0, 4, 3, 1]),
    (26, 1, [0, 4, 4, 0]),
    (-63, 1, [0, 5, 2, 1]),
    (-4, 1, [0, 5, 3, 0]),
    (15, 1, [0, 6, 2, 0]),
    (-63, 1, [1, 2, 5, 1]),
    (30, 1, [1, 2, 6, 0]),
    (144, 1, [1, 3, 3, 2]),
    (-78, 1, [1, 3, 4, 1]),
    (-8, 1, [1, 3, 5, 0]),
    (216, 1, [1, 4, 2, 2]),
    (51, 1, [1, 4, 3, 1]),
    (52, 1, [1, 4, 4, 0]),
    (-126, 1, [1, 5, 2, 1]),
    (-8, 1, [1, 5, 3, 0]),
    (30, 1, [1, 6, 2, 0]),
    (108, 1, [2, 2, 4, 2]),
    (-126, 1, [2, 2, 5, 1]),
    (15, 1, [2, 2, 6, 0]),
    (288, 1, [2, 3, 3, 2]),
    (51, 1, [2, 3, 4, 1]),
    (-4, 1, [2, 3, 5, 0]),
    (108, 1, [2, 4, 2, 2]),
    (-78, 1, [2, 4, 3, 1]),
    (26, 1, [2, 4, 4, 0]),
    (-63, 1, [2, 5, 2, 1]),
    (-4, 1, [2, 5, 3, 0]),
    (15, 1, [2, 6, 2, 0]),
    (216, 1, [3, 2, 4, 2]),
    (-63, 1, [3, 2, 5, 1]),
    (144, 1, [3, 3, 3, 2]),
    (60, 1, [3, 3, 4, 1]),
    (-69, 1, [3, 4, 3, 1]),
    (108, 1, [4, 2, 4, 2]),
    (-10, 1, [0, 2, 5, 0]),
    (174, 1, [0, 3, 3, 1]),
    (28, 1, [0, 3, 4, 0]),
    (-72, 1, [0, 4, 1, 2]),
    (-48, 1, [0, 4, 3, 0]),
    (63, 1, [0, 5, 1, 1]),
    (36, 1, [0, 5, 2, 0]),
    (-6, 1, [0, 6, 1, 0]),
    (-6, 1, [1, 1, 6, 0]),
    (120, 1, [1, 2, 4, 1]),
    (26, 1, [1, 2, 5, 0]),
    (-144, 1, [1, 3, 2, 2]),
    (216, 1, [1, 3, 3, 1]),
    (-20, 1, [1, 3, 4, 0]),
    (-72, 1, [1, 4, 1, 2]),
    (120, 1, [1, 4, 2, 1]),
    (-20, 1, [1, 4, 3, 0]),
    (63, 1, [1, 5, 1, 1]),
    (26, 1, [1, 5, 2, 0]),
    (-6, 1, [1, 6, 1, 0]),
    (63, 1, [2, 1, 5, 1]),
    (-6, 1, [2, 1, 6, 0]),
    (-144, 1, [2, 2, 3, 2]),
    (120, 1, [2, 2, 4, 1]),
    (36, 1, [2, 2, 5, 0]),
    (-144, 1, [2, 3, 2, 2]),
    (216, 1, [2, 3, 3, 1]),
    (-48, 1, [2, 3, 4, 0]),
    (120, 1, [2, 4, 2, 1]),
    (28, 1, [2, 4, 3, 0]),
    (-10, 1, [2, 5, 2, 0]),
    (-72, 1, [3, 1, 4, 2]),
    (63, 1, [3, 1, 5, 1]),
    (-144, 1, [3, 2, 3, 2]),
    (174, 1, [3, 3, 3, 1]),
    (-72, 1, [4, 1, 4, 2]),
    (81, 1, [0, 2, 4, 0]),
    (-174, 1, [0, 3, 2, 1]),
    (-24, 1, [0, 3, 3, 0]),
    (36, 1, [0, 4, 0, 2]),
    (-60, 1, [0, 4, 1, 1]),
    (44, 1, [0, 4, 2, 0]),
    (-45, 1, [0, 5, 0, 1]),
    (36, 1, [0, 5, 1, 0]),
    (15, 1, [0, 6, 0, 0]),
    (46, 1, [1, 1, 5, 0]),
    (-306, 1, [1, 2, 3, 1]),
    (44, 1, [1, 2, 4, 0]),
    (72, 1, [1, 3, 1, 2]),
    (-306, 1, [1, 3, 2, 1]),
    (-4, 1, [1, 3, 3, 0]),
    (-129, 1, [1, 4, 1, 1]),
    (44, 1, [1, 4, 2, 0]),
    (46, 1, [1, 5, 1, 0]),
    (15, 1, [2, 0, 6, 0]),
    (-129, 1, [2, 1, 4, 1]),
    (36, 1, [2, 1, 5, 0]),
    (108, 1, [2, 2, 2, 2]),
    (-306, 1, [2, 2, 3, 1]),
    (44, 1, [2, 2, 4, 0]),
    (-306, 1, [2, 3, 2, 1]),
    (-24, 1, [2, 3, 3, 0]),
    (81, 1, [2, 4, 2, 0]),
    (-45, 1, [3, 0, 5, 1]),
    (72, 1, [3, 1, 3, 2]),
    (-60, 1, [3, 1, 4, 1]),
    (-174, 1, [3, 2, 3, 1]),
    (36, 1, [4, 0, 4, 2]),
    (-44, 1, [0, 2, 3, 0]),
    (69, 1, [0, 3, 1, 1]),
    (-24, 1, [0, 3, 2, 0]),
    (6, 1, [0, 4, 0, 1]),
    (-48, 1, [0, 4, 1, 0]),
    (-4, 1, [0, 5, 0, 0]),
    (-76, 1, [1, 1, 4, 0]),
    (120, 1, [1, 2, 2, 1]),
    (-44, 1, [1, 2, 3, 0]),
    (129, 1, [1, 3, 1, 1]),
    (-44, 1, [1, 3, 2, 0]),
    (-76, 1, [1, 4, 1, 0]),
    (-4, 1, [2, 0, 5, 0]),
    (129, 1, [2, 1, 3, 1]),
    (-48, 1, [2, 1, 4, 0]),
    (120, 1, [2, 2, 2, 1]),
    (-24, 1, [2, 2, 3, 0]),
    (-44, 1, [2, 3, 2, 0]),
    (6, 1, [3, 0, 4, 1]),
    (69, 1, [3, 1, 3, 1]),
    (81, 1, [0, 2, 2, 0]),
    (-45, 1, [0, 3, 0, 1]),
    (28, 1, [0, 3, 1, 0]),
    (26, 1, [0, 4, 0, 0]),
    (76, 1, [1, 1, 3, 0]),
    (-63, 1, [1, 2, 1, 1]),
    (118, 1, [1, 2, 2, 0]),
    (76, 1, [1, 3, 1, 0]),
    (26, 1, [2, 0, 4, 0]),
    (-63, 1, [2, 1, 2, 1]),
    (28, 1, [2, 1, 3, 0]),
    (81, 1, [2, 2, 2, 0]),
    (-45, 1, [3, 0, 3, 1]),
    (-10, 1, [0, 2, 1, 0]),
    (-4, 1, [0, 3, 0, 0]),
    (-46, 1, [1, 1, 2, 0]),
    (-46, 1, [1, 2, 1, 0]),
    (-4, 1, [2, 0, 3, 0]),
    (-10, 1, [2, 1, 2, 0]),
    (15, 1, [0, 2, 0, 0]),
    (6, 1, [1, 1, 1, 0]),
    (15, 1, [2, 0, 2, 0]),
];

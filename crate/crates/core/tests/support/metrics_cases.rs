//! Hand-checked readability fixtures.
//!
//! Counts are (sentences, words, letters, syllables, difficult words) under the
//! bundled Dale-Chall list; scores are (CLI, FKGL, DCRS) computed from those
//! counts with the published formulas.

pub struct OracleCase {
    pub text: &'static str,
    pub counts: [u32; 5],
    pub scores: [f64; 3],
}

const fn case(text: &'static str, counts: [u32; 5], scores: [f64; 3]) -> OracleCase {
    OracleCase { text, counts, scores }
}

pub const ORACLE_CASES: &[OracleCase] = &[
    case("The quick brown fox jumps over the lazy dog.", [1, 9, 35, 11, 0], [3.7778, 2.3422, 0.4464]),
    case("Hi.", [1, 1, 2, 1, 1], [-33.6400, -3.4000, 19.4761]),
    case("The cat sat.", [1, 3, 9, 3, 0], [-8.0267, -2.6200, 0.1488]),
    case("Hello world. How are you?", [2, 5, 19, 6, 0], [-5.2960, -0.4550, 0.1240]),
    case("Dr. Smith arrived. He left.", [2, 5, 20, 7, 2], [-4.1200, 1.9050, 10.0765]),
    case("It's 98% done", [1, 3, 7, 3, 0], [-11.9467, -2.6200, 0.1488]),
    case("We made a simple table. The table is big.", [2, 9, 31, 12, 0], [-2.1244, 1.8983, 0.2232]),
    case("A small paper test can find malaria in blood. Doctors get the results fast.", [2, 14, 60, 19, 2], [5.1714, 3.1543, 6.2394]),
    case("Scientists built a phone app. It reads the test. Then it sends the answer to a doctor!", [3, 17, 67, 20, 2], [2.1506, 0.5024, 5.7752]),
    case("Is the water safe to drink? We checked it twice.", [2, 10, 37, 12, 0], [0.0360, 0.5200, 0.2480]),
    case("The state-of-the-art model works well.", [1, 5, 30, 9, 1], [13.5600, 7.6000, 7.0425]),
    case("Rain fell all day. The river rose. People moved to higher ground.", [3, 12, 51, 16, 1], [1.7900, 1.7033, 5.1507]),
    case("Microfluidic diagnostics enable multiplexed detection of Plasmodium falciparum.", [1, 8, 71, 25, 7], [32.6850, 24.4050, 17.8496]),
    case("Blockchain technology provides secure geotagged data management.", [1, 7, 57, 20, 7], [27.8514, 20.8543, 19.7737]),
    case("My mother baked bread. My father made soup. We ate dinner together.", [3, 12, 53, 18, 0], [2.7700, 3.6700, 0.1984]),
    case("The children were playing outside. They laughed and ran around the yard.", [2, 12, 59, 16, 0], [8.1767, 2.4833, 0.2976]),
    case("Field tests in rural Uganda correctly identified 98 cases.", [1, 9, 47, 18, 4], [11.6178, 11.5200, 11.1007]),
    case("Prof. Lee and Mr. Brown wrote the paper. It was long.", [2, 11, 39, 12, 3], [-0.3345, -0.5723, 8.2157]),
    case("The results, e.g. the charts, are clear. Everyone agreed.", [2, 10, 43, 14, 3], [3.5640, 2.8800, 8.6215]),
    case("Deep learning algorithms analyze images. They give quick answers to health workers.", [2, 12, 70, 21, 3], [13.5667, 7.4000, 7.8816]),
    case("I like apples. You like pears. We both like fruit.", [3, 10, 38, 11, 0], [-2.3360, -1.3100, 0.1653]),
    case("Time is short", [1, 3, 11, 3, 0], [-4.1067, -2.6200, 0.1488]),
    case("The bird sang!  It flew away.\n\nThe sun set.", [3, 9, 30, 10, 0], [-6.0667, -1.3089, 0.1488]),
];

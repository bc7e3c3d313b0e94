//! The double tensor Hopf algebra `T(T+(V))` and its commutative variant.

mod antipode;
mod coproduct;
mod element;
mod schroder;
mod sym;
mod word;

pub use antipode::{
    antipode, antipode_axiom_sides, antipode_bogoliubov, antipode_convolution, antipode_schroder,
    antipode_takeuchi, counit_element, AntipodeMethod,
};
pub use coproduct::{
    coproduct, coproduct_monomial, coproduct_word, counit, half_coproduct_left,
    half_coproduct_right, iterated_reduced_coproduct, reduced_coproduct,
    reduced_coproduct_monomial,
};
pub use element::{Monomial, Tensor, TensorElement};
pub use schroder::{
    antipode_schroder_word, c_term, cancellation_sum, forest_coproduct_terms,
    schroder_iterated_terms, tree_monomial,
};
pub use sym::{
    project, sym_antipode, sym_antipode_takeuchi, sym_iterated, sym_iterated_reduced_coproduct,
    sym_reduced_coproduct, CommMonomial, SymElement,
};
pub use word::{
    bar_monomials, connected_components, restrict, split, words_of_length, BarMonomial, Word,
};

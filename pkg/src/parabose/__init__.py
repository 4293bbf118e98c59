"""Coupling coefficients of the osp(1|2) positive discrete series.

Modules:

* ``core_arith``: mu-deformed numbers, factorials and Pochhammer symbols;
* ``orthopoly``: hypergeometric series and the orthogonal polynomial families;
* ``osp_rep``: representations, twisted coproduct and the ladder oracle;
* ``cgc_closed``: closed-form coupling coefficients;
* ``genfun``: generating functions of coupling-coefficient rows;
* ``wavefun``: Dunkl-oscillator wavefunctions in one and two dimensions.
"""

__version__ = "0.1.0"

#pragma once

#include <string>
#include <vector>

#include "tsw/evaluator.hpp"
#include "tsw/formula.hpp"
#include "tsw/team.hpp"

namespace tsw {

enum class SynthTarget { PD, InqL };

struct SynthOptions {
  // Emit constructions literally, without ⊥⊗ψ ↦ ψ style simplification.
  bool raw = false;
  // Greedily drop conjuncts whose removal keeps the truth set (PD only).
  bool minimize = false;
};

// Θ*_X: for every team Y on N, Y ⊨ Θ*_X iff X ⊄ Y. X must be nonempty.
Formula theta_star(const Team& x, const VariableSet& vars, const SynthOptions& options = {});

// A PD formula whose truth set over K.vars is exactly K.
Formula synth_pd(const TeamFamily& family, const SynthOptions& options = {});

// An InqL formula whose truth set over K.vars is exactly K: the intuitionistic
// disjunction over K's maximal teams X of a flat description of "⊆ X".
Formula synth_inql(const TeamFamily& family, const SynthOptions& options = {});

// Equivalent formula in the target fragment, via the truth set of φ.
Formula translate(const Formula& formula, SynthTarget target, const Limits& limits = {},
                  const SynthOptions& options = {});

// (p1 ∨ ¬p1) ∧ ... ∧ (pk ∨ ¬pk) → (q ∨ ¬q), with ¬x written x → ⊥.
Formula dep_to_inql(const std::vector<std::string>& args, const std::string& target);

}  // namespace tsw

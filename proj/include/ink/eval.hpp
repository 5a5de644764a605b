#pragma once

#include <cstdint>
#include <vector>

#include "ink/formula.hpp"

namespace ink {

/// Postfix program for fast repeated evaluation of one formula against many
/// interpretations. Atom operands are signature indices.
struct CompiledFormula {
  enum class Op : std::uint8_t { PushAtom, PushFalse, Not, And, Or };
  struct Instr {
    Op op;
    std::uint32_t atom;  // PushAtom only
  };
  std::vector<Instr> code;
  std::uint32_t stack_depth = 0;
};

CompiledFormula compile(const Formula& f, const Signature& sig);

bool eval_compiled(const CompiledFormula& cf, const Interpretation& w);

/// Bit-sliced two-valued evaluation over a block of interpretations.
/// atom_planes holds natoms rows of nwords words; bit j of row a is the truth
/// value of atom a in interpretation j of the block. out receives one bit per
/// interpretation.
void eval2_block(const CompiledFormula& cf, const std::uint64_t* atom_planes, std::size_t natoms,
                 std::size_t nwords, std::uint64_t* out);

/// Bit-sliced three-valued evaluation in the (p, q) plane encoding
/// (p = "value in {T,B}", q = "value in {F,B}"). out_p bit set means the
/// formula is satisfied (value T or B) in that lane.
void eval3_block(const CompiledFormula& cf, const std::uint64_t* p_planes, const std::uint64_t* q_planes,
                 std::size_t natoms, std::size_t nwords, std::uint64_t* out_p, std::uint64_t* out_q);

/// Fills atom planes for the 64*nwords interpretations with indices
/// base, base+1, ... in enumeration order (atom a = bit a of the index).
void fill_enumeration_planes(std::uint64_t base, std::size_t natoms, std::size_t nwords,
                             std::vector<std::uint64_t>& planes);

/// Model bitmap of f over the full interpretation space of sig (2^n lanes,
/// padded to whole words with zeros). Guarded to at most 20 atoms.
std::vector<std::uint64_t> model_bitmap(const Formula& f, const Signature& sig);

/// Number of set bits in a bitmap.
std::size_t popcount_words(const std::vector<std::uint64_t>& words);

}  // namespace ink

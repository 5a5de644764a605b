#include "ink/eval.hpp"

#include <bit>

#include "ink/kernels.hpp"

namespace ink {

namespace {

void compile_node(const Formula& f, const Signature& sig, CompiledFormula& out, std::uint32_t depth,
                  std::uint32_t& max_depth) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out.code.push_back({CompiledFormula::Op::PushAtom, static_cast<std::uint32_t>(sig.index_of(f.atom_name()))});
      max_depth = std::max(max_depth, depth + 1);
      return;
    case Formula::Kind::Contradiction:
      out.code.push_back({CompiledFormula::Op::PushFalse, 0});
      max_depth = std::max(max_depth, depth + 1);
      return;
    case Formula::Kind::Not:
      compile_node(f.child(), sig, out, depth, max_depth);
      out.code.push_back({CompiledFormula::Op::Not, 0});
      return;
    case Formula::Kind::And:
      compile_node(f.left(), sig, out, depth, max_depth);
      compile_node(f.right(), sig, out, depth + 1, max_depth);
      out.code.push_back({CompiledFormula::Op::And, 0});
      return;
    case Formula::Kind::Or:
      compile_node(f.left(), sig, out, depth, max_depth);
      compile_node(f.right(), sig, out, depth + 1, max_depth);
      out.code.push_back({CompiledFormula::Op::Or, 0});
      return;
  }
}

}  // namespace

CompiledFormula compile(const Formula& f, const Signature& sig) {
  CompiledFormula cf;
  std::uint32_t max_depth = 0;
  compile_node(f, sig, cf, 0, max_depth);
  cf.stack_depth = max_depth;
  return cf;
}

bool eval_compiled(const CompiledFormula& cf, const Interpretation& w) {
  // bool stack; depth is bounded by the formula size
  std::vector<bool> stack;
  stack.reserve(cf.stack_depth);
  for (const auto& ins : cf.code) {
    switch (ins.op) {
      case CompiledFormula::Op::PushAtom: stack.push_back(w.value(ins.atom)); break;
      case CompiledFormula::Op::PushFalse: stack.push_back(false); break;
      case CompiledFormula::Op::Not: stack.back() = !stack.back(); break;
      case CompiledFormula::Op::And: {
        bool b = stack.back();
        stack.pop_back();
        stack.back() = stack.back() && b;
        break;
      }
      case CompiledFormula::Op::Or: {
        bool b = stack.back();
        stack.pop_back();
        stack.back() = stack.back() || b;
        break;
      }
    }
  }
  return stack.back();
}

void eval2_block(const CompiledFormula& cf, const std::uint64_t* atom_planes, std::size_t natoms,
                 std::size_t nwords, std::uint64_t* out) {
  (void)natoms;
  const auto& k = kernels::active();
  std::vector<std::uint64_t> stack(static_cast<std::size_t>(cf.stack_depth) * nwords);
  std::size_t top = 0;  // number of live slots
  auto slot = [&](std::size_t i) { return stack.data() + i * nwords; };
  for (const auto& ins : cf.code) {
    switch (ins.op) {
      case CompiledFormula::Op::PushAtom:
        std::copy_n(atom_planes + static_cast<std::size_t>(ins.atom) * nwords, nwords, slot(top));
        ++top;
        break;
      case CompiledFormula::Op::PushFalse:
        std::fill_n(slot(top), nwords, 0);
        ++top;
        break;
      case CompiledFormula::Op::Not: k.bnot(slot(top - 1), slot(top - 1), nwords); break;
      case CompiledFormula::Op::And:
        k.band(slot(top - 2), slot(top - 2), slot(top - 1), nwords);
        --top;
        break;
      case CompiledFormula::Op::Or:
        k.bor(slot(top - 2), slot(top - 2), slot(top - 1), nwords);
        --top;
        break;
    }
  }
  std::copy_n(slot(0), nwords, out);
}

void eval3_block(const CompiledFormula& cf, const std::uint64_t* p_planes, const std::uint64_t* q_planes,
                 std::size_t natoms, std::size_t nwords, std::uint64_t* out_p, std::uint64_t* out_q) {
  (void)natoms;
  const auto& k = kernels::active();
  // two parallel stacks; negation swaps the plane roles of the top slot
  std::vector<std::uint64_t> stack(2 * static_cast<std::size_t>(cf.stack_depth) * nwords);
  std::vector<std::uint64_t*> pptr(cf.stack_depth), qptr(cf.stack_depth);
  for (std::uint32_t i = 0; i < cf.stack_depth; ++i) {
    pptr[i] = stack.data() + (2 * i) * nwords;
    qptr[i] = stack.data() + (2 * i + 1) * nwords;
  }
  std::size_t top = 0;
  for (const auto& ins : cf.code) {
    switch (ins.op) {
      case CompiledFormula::Op::PushAtom:
        std::copy_n(p_planes + static_cast<std::size_t>(ins.atom) * nwords, nwords, pptr[top]);
        std::copy_n(q_planes + static_cast<std::size_t>(ins.atom) * nwords, nwords, qptr[top]);
        ++top;
        break;
      case CompiledFormula::Op::PushFalse:
        std::fill_n(pptr[top], nwords, 0);
        std::fill_n(qptr[top], nwords, ~std::uint64_t{0});
        ++top;
        break;
      case CompiledFormula::Op::Not: std::swap(pptr[top - 1], qptr[top - 1]); break;
      case CompiledFormula::Op::And:
        k.band(pptr[top - 2], pptr[top - 2], pptr[top - 1], nwords);
        k.bor(qptr[top - 2], qptr[top - 2], qptr[top - 1], nwords);
        --top;
        break;
      case CompiledFormula::Op::Or:
        k.bor(pptr[top - 2], pptr[top - 2], pptr[top - 1], nwords);
        k.band(qptr[top - 2], qptr[top - 2], qptr[top - 1], nwords);
        --top;
        break;
    }
  }
  std::copy_n(pptr[0], nwords, out_p);
  std::copy_n(qptr[0], nwords, out_q);
}

void fill_enumeration_planes(std::uint64_t base, std::size_t natoms, std::size_t nwords,
                             std::vector<std::uint64_t>& planes) {
  // Interpretation j of the block has index base+j; atom a is bit a of the
  // index. Atoms 0..5 follow fixed periodic patterns inside a word, higher
  // atoms are constant per word.
  static const std::uint64_t pattern[6] = {
      0xaaaaaaaaaaaaaaaaULL, 0xccccccccccccccccULL, 0xf0f0f0f0f0f0f0f0ULL,
      0xff00ff00ff00ff00ULL, 0xffff0000ffff0000ULL, 0xffffffff00000000ULL,
  };
  planes.assign(natoms * nwords, 0);
  for (std::size_t a = 0; a < natoms; ++a) {
    std::uint64_t* row = planes.data() + a * nwords;
    if (a < 6) {
      // base is a multiple of 64 in all callers; patterns line up unshifted
      for (std::size_t w = 0; w < nwords; ++w) row[w] = pattern[a];
    } else {
      for (std::size_t w = 0; w < nwords; ++w) {
        const std::uint64_t word_index = base / 64 + w;
        row[w] = ((word_index >> (a - 6)) & 1) ? ~std::uint64_t{0} : 0;
      }
    }
  }
}

std::vector<std::uint64_t> model_bitmap(const Formula& f, const Signature& sig) {
  const std::size_t n = sig.size();
  if (n > 20) throw InvalidArgumentError("model_bitmap: signature too large (max 20 atoms)");
  const std::uint64_t space = std::uint64_t{1} << n;
  const std::size_t nwords = static_cast<std::size_t>((space + 63) / 64);
  CompiledFormula cf = compile(f, sig);
  std::vector<std::uint64_t> planes;
  fill_enumeration_planes(0, n, nwords, planes);
  std::vector<std::uint64_t> out(nwords);
  if (n == 0) {
    // single empty interpretation in lane 0
    Interpretation w(std::make_shared<const Signature>(sig));
    out[0] = eval_compiled(cf, w) ? 1 : 0;
    return out;
  }
  eval2_block(cf, planes.data(), n, nwords, out.data());
  if (space % 64 != 0) out.back() &= (std::uint64_t{1} << (space % 64)) - 1;
  return out;
}

std::size_t popcount_words(const std::vector<std::uint64_t>& words) {
  std::size_t c = 0;
  for (std::uint64_t w : words) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

}  // namespace ink

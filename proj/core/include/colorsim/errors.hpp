#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace colorsim {

/// Base class for every failure the simulator surfaces to callers.
class SimError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ConfigError : public SimError {
public:
  using SimError::SimError;
};

class ParseError : public SimError {
public:
  using SimError::SimError;
};

/// Brute-force search space exceeds the configured cap.
class CapExceeded : public SimError {
public:
  using SimError::SimError;
};

/// Partition precondition failed: the instance degree is below the
/// configured polylog threshold.
class DegreeTooLow : public SimError {
public:
  DegreeTooLow(std::uint64_t delta, double threshold)
      : SimError("DegreeTooLow: delta=" + std::to_string(delta) +
                 " below threshold=" + std::to_string(threshold)),
        delta(delta), threshold(threshold) {}
  std::uint64_t delta;
  double threshold;
};

/// A routing batch asked a vertex to source or sink more than the allowed
/// number of words. Signals an algorithmic bug upstream.
class OverloadedVertex : public SimError {
public:
  enum class Direction { Send, Receive };
  OverloadedVertex(std::uint32_t vertex, Direction dir, std::uint64_t amount,
                   std::uint64_t limit)
      : SimError("OverloadedVertex: v=" + std::to_string(vertex) +
                 (dir == Direction::Send ? " sends " : " receives ") +
                 std::to_string(amount) + " words, limit " +
                 std::to_string(limit)),
        vertex(vertex), direction(dir), amount(amount), limit(limit) {}
  std::uint32_t vertex;
  Direction direction;
  std::uint64_t amount;
  std::uint64_t limit;
};

class MemoryExceeded : public SimError {
public:
  MemoryExceeded(std::size_t machine, std::uint64_t round,
                 std::uint64_t resident, std::uint64_t limit)
      : SimError("MemoryExceeded: machine=" + std::to_string(machine) +
                 " round=" + std::to_string(round) + " resident=" +
                 std::to_string(resident) + " limit=" + std::to_string(limit)),
        machine(machine), round(round), resident(resident), limit(limit) {}
  std::size_t machine;
  std::uint64_t round;
  std::uint64_t resident;
  std::uint64_t limit;
};

class QueryBudgetExceeded : public SimError {
public:
  QueryBudgetExceeded(std::uint32_t vertex, std::uint64_t used,
                      std::uint64_t budget)
      : SimError("QueryBudgetExceeded: v=" + std::to_string(vertex) +
                 " used=" + std::to_string(used) +
                 " budget=" + std::to_string(budget)),
        vertex(vertex), used(used), budget(budget) {}
  std::uint32_t vertex;
  std::uint64_t used;
  std::uint64_t budget;
};

class InfeasibleSpec : public SimError {
public:
  using SimError::SimError;
};

class ParameterError : public SimError {
public:
  using SimError::SimError;
};

/// A vertex ran out of palette colors where the counting argument says it
/// cannot. Always indicates a precondition breach upstream.
class PaletteExhausted : public SimError {
public:
  using SimError::SimError;
};

class InvariantBreach : public SimError {
public:
  using SimError::SimError;
};

}  // namespace colorsim

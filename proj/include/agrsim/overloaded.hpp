#ifndef AGRSIM_OVERLOADED_HPP
#define AGRSIM_OVERLOADED_HPP

namespace agrsim {

// Visitor built from lambdas, for std::visit.
template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace agrsim

#endif  // AGRSIM_OVERLOADED_HPP

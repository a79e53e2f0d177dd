#include "agrsim/payload.hpp"

#include <stdexcept>

namespace agrsim {

Payload::Payload(std::string tag) : tag_(std::move(tag)) {
  if (tag_.empty()) throw std::invalid_argument("payload tag must not be empty");
  if (tag_.find_first_of(",\r\n") != std::string::npos) {
    throw std::invalid_argument("payload tag must not contain ',' or line breaks: " + tag_);
  }
}

}  // namespace agrsim

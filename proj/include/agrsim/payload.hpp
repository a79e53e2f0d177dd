#ifndef AGRSIM_PAYLOAD_HPP
#define AGRSIM_PAYLOAD_HPP

#include <memory>
#include <string>
#include <string_view>
#include <typeinfo>
#include <utility>

namespace agrsim {

/// Opaque, immutable event payload: a trace tag plus an optional typed value.
///
/// The value is shared, so copying a payload (e.g. fanning a message out to
/// many recipients) never copies the underlying object. The tag is written to
/// the canonical trace and must not contain ',' or line breaks.
class Payload {
 public:
  Payload() = default;
  explicit Payload(std::string tag);

  template <class T>
  static Payload make(std::string tag, T value) {
    Payload p(std::move(tag));
    p.data_ = std::make_shared<const T>(std::move(value));
    p.type_ = &typeid(T);
    return p;
  }

  template <class T>
  static Payload wrap(std::string tag, std::shared_ptr<const T> value) {
    Payload p(std::move(tag));
    p.data_ = std::move(value);
    p.type_ = &typeid(T);
    return p;
  }

  std::string_view tag() const { return tag_; }
  bool has_value() const { return data_ != nullptr; }

  template <class T>
  bool holds() const {
    return type_ != nullptr && *type_ == typeid(T);
  }

  /// Typed view of the value; nullptr when the payload holds another type.
  template <class T>
  const T* get() const {
    return holds<T>() ? static_cast<const T*>(data_.get()) : nullptr;
  }

  template <class T>
  std::shared_ptr<const T> share() const {
    return holds<T>() ? std::static_pointer_cast<const T>(data_) : nullptr;
  }

 private:
  std::string tag_;
  std::shared_ptr<const void> data_;
  const std::type_info* type_ = nullptr;
};

}  // namespace agrsim

#endif  // AGRSIM_PAYLOAD_HPP

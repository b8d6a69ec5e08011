#pragma once

// Shared machinery for the stream handles: a codata value is a reference to
// an immutable node answering two observations, head and tail.

#include <memory>
#include <type_traits>
#include <utility>

namespace corec::detail {

template <class Self, class Head, class TailResult>
class CodataHandle {
 public:
  using head_type = Head;
  using tail_type = TailResult;

  class Node {
   public:
    virtual ~Node() = default;
    virtual Head head() const = 0;
    virtual TailResult tail() const = 0;
  };

  explicit CodataHandle(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  Head head() const { return node_->head(); }
  TailResult tail() const { return node_->tail(); }

  // Identity, not observational equality.
  bool same_as(const Self& other) const noexcept { return node_ == other.node(); }

  const std::shared_ptr<const Node>& node() const noexcept { return node_; }

 private:
  std::shared_ptr<const Node> node_;
};

template <class Handle, class HeadFn, class TailFn>
class FnNode final : public Handle::Node {
 public:
  FnNode(HeadFn head, TailFn tail) : head_(std::move(head)), tail_(std::move(tail)) {}

  typename Handle::head_type head() const override { return head_(); }
  typename Handle::tail_type tail() const override { return tail_(); }

 private:
  HeadFn head_;
  TailFn tail_;
};

// Builds a handle from one thunk per observation.
template <class Handle, class HeadFn, class TailFn>
Handle make_cocase(HeadFn head, TailFn tail) {
  return Handle(std::make_shared<const FnNode<Handle, HeadFn, TailFn>>(std::move(head), std::move(tail)));
}

}  // namespace corec::detail

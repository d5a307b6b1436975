#pragma once

#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pyrafast {

/// Grow-only byte buffer. Capacity never shrinks; a request larger than the
/// current capacity grows to max(request, 1.5 * capacity) and counts one
/// allocation event. Requests at or below capacity reuse the storage as-is,
/// so steady-state frames allocate nothing.
class SharedBuffer {
  public:
    std::size_t capacity() const { return storage_.size(); }
    std::size_t alloc_events() const { return alloc_events_; }

    /// Make room for `size` bytes. Existing content up to the old capacity
    /// is preserved verbatim.
    void ensure(std::size_t size) {
        if (size <= storage_.size()) return;
        const std::size_t grown = storage_.size() + storage_.size() / 2;
        storage_.resize(size > grown ? size : grown);
        ++alloc_events_;
    }

    std::uint8_t* data() { return storage_.data(); }
    const std::uint8_t* data() const { return storage_.data(); }

  private:
    std::vector<std::uint8_t> storage_;
    std::size_t alloc_events_ = 0;
};

class BufferPool;

/// Exclusive lease on a pool slot. Move-only; releases on destruction if
/// still live. Explicit double release is a ledger error and throws.
class BufferHandle {
  public:
    BufferHandle() = default;
    BufferHandle(BufferHandle&& o) noexcept { *this = std::move(o); }
    BufferHandle& operator=(BufferHandle&& o) noexcept;
    BufferHandle(const BufferHandle&) = delete;
    BufferHandle& operator=(const BufferHandle&) = delete;
    ~BufferHandle();

    bool live() const { return pool_ != nullptr; }
    const std::string& slot() const { return slot_name_; }

    /// The checked-out bytes: exactly the requested size, which may be
    /// smaller than the slot's capacity.
    std::span<std::uint8_t> bytes() {
        if (!live())
            throw std::logic_error("BufferHandle: bytes() on a released handle");
        return view_;
    }

    void release();

  private:
    friend class BufferPool;
    BufferHandle(BufferPool* pool, std::string name, std::span<std::uint8_t> view)
        : pool_(pool), slot_name_(std::move(name)), view_(view) {}

    BufferPool* pool_ = nullptr;
    std::string slot_name_;
    std::span<std::uint8_t> view_;
};

/// Named pool of grow-only buffers with a checkout ledger.
///
/// Each slot hands out at most one live handle at a time; a second request
/// before release is a contention error. Slot storage is stable for the
/// lifetime of the pool, so pipeline stages can alternate checkout/release
/// every frame without reallocating once capacities have warmed up.
class BufferPool {
  public:
    /// Check out `size` bytes from `slot`, growing its capacity if needed.
    BufferHandle request(const std::string& slot, std::size_t size) {
        std::lock_guard<std::mutex> lock(mu_);
        Slot& s = slots_[slot];  // creates the slot on first use
        if (s.checked_out)
            throw std::runtime_error("BufferPool: slot '" + slot +
                                     "' is already checked out");
        s.buf.ensure(size);
        s.checked_out = true;
        ++s.generation;
        return BufferHandle(this, slot, std::span<std::uint8_t>(s.buf.data(), size));
    }

    std::size_t capacity(const std::string& slot) const {
        std::lock_guard<std::mutex> lock(mu_);
        return find(slot).buf.capacity();
    }
    std::size_t alloc_events(const std::string& slot) const {
        std::lock_guard<std::mutex> lock(mu_);
        return find(slot).buf.alloc_events();
    }
    std::uint64_t generation(const std::string& slot) const {
        std::lock_guard<std::mutex> lock(mu_);
        return find(slot).generation;
    }
    bool checked_out(const std::string& slot) const {
        std::lock_guard<std::mutex> lock(mu_);
        return find(slot).checked_out;
    }

  private:
    friend class BufferHandle;

    struct Slot {
        SharedBuffer buf;
        bool checked_out = false;
        std::uint64_t generation = 0;
    };

    const Slot& find(const std::string& slot) const {
        auto it = slots_.find(slot);
        if (it == slots_.end())
            throw std::out_of_range("BufferPool: unknown slot '" + slot + "'");
        return it->second;
    }

    void release_slot(const std::string& slot) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = slots_.find(slot);
        if (it == slots_.end() || !it->second.checked_out)
            throw std::logic_error("BufferPool: release of slot '" + slot +
                                   "' that is not checked out");
        it->second.checked_out = false;
    }

    mutable std::mutex mu_;
    std::map<std::string, Slot> slots_;
};

inline BufferHandle& BufferHandle::operator=(BufferHandle&& o) noexcept {
    if (this != &o) {
        if (pool_ != nullptr) pool_->release_slot(slot_name_);
        pool_ = o.pool_;
        slot_name_ = std::move(o.slot_name_);
        view_ = o.view_;
        o.pool_ = nullptr;
        o.view_ = {};
    }
    return *this;
}

inline BufferHandle::~BufferHandle() {
    if (pool_ != nullptr) pool_->release_slot(slot_name_);
}

inline void BufferHandle::release() {
    if (pool_ == nullptr)
        throw std::logic_error("BufferHandle: double release of slot '" + slot_name_ + "'");
    pool_->release_slot(slot_name_);
    pool_ = nullptr;
    view_ = {};
}

}  // namespace pyrafast

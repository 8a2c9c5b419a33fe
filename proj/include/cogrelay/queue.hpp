#pragma once
// FIFO packet queue for the primary and relay buffers.  Tracks per-packet
// arrival slots for delay measurement and conserves arrival/departure counts
// so a run can assert packet accounting at the end.

#include <cstddef>
#include <cstdint>
#include <deque>
#include <stdexcept>

namespace cogrelay {

struct PacketRecord {
  std::uint64_t arrival_slot = 0;
  bool relayed = false;  // set once the packet is handed to the relay queue
};

class PacketQueue {
 public:
  bool empty() const { return packets_.empty(); }
  std::size_t size() const { return packets_.size(); }

  const PacketRecord& front() const {
    if (packets_.empty())
      throw std::logic_error("PacketQueue: front of empty queue");
    return packets_.front();
  }

  void push(PacketRecord packet) {
    packets_.push_back(packet);
    ++arrivals_;
  }

  PacketRecord pop() {
    if (packets_.empty())
      throw std::logic_error("PacketQueue: departure from empty queue");
    PacketRecord packet = packets_.front();
    packets_.pop_front();
    ++departures_;
    return packet;
  }

  std::uint64_t arrivals() const { return arrivals_; }
  std::uint64_t departures() const { return departures_; }

 private:
  std::deque<PacketRecord> packets_;
  std::uint64_t arrivals_ = 0;
  std::uint64_t departures_ = 0;
};

}  // namespace cogrelay

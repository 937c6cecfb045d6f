#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstdlib>
#include <cstring>

#include "bkev/error.hpp"
#include "bkev/io.hpp"

namespace bkev {

std::filesystem::path TimingLock::default_path() {
  if (const char* dir = std::getenv("BKEV_LOCK_DIR"); dir && *dir) return std::filesystem::path(dir) / "bkev-timing.lock";
  return std::filesystem::temp_directory_path() / "bkev-timing.lock";
}

TimingLock::TimingLock(const std::filesystem::path& path) {
  fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) throw Error("cannot open timing lock " + path.string() + ": " + std::strerror(errno));
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    ::close(fd_);
    fd_ = -1;
    throw Error("another bkev process is measuring costs (lock " + path.string() + " is held); refusing to time");
  }
}

TimingLock::~TimingLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

}  // namespace bkev

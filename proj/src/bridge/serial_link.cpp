#include <cerrno>
#include <cstring>

#include <fcntl.h>
#include <termios.h>
#include <unistd.h>

#include "bendaid/bridge/device_link.hpp"

namespace bendaid::bridge {

namespace {

speed_t baud_constant(int baud) {
    switch (baud) {
        case 9600: return B9600;
        case 19200: return B19200;
        case 38400: return B38400;
        case 57600: return B57600;
        case 115200: return B115200;
        case 230400: return B230400;
        case 460800: return B460800;
        case 921600: return B921600;
        default: throw DeviceOpenError("unsupported baud rate " + std::to_string(baud));
    }
}

std::string errno_text() { return std::strerror(errno); }

}  // namespace

SerialLink::SerialLink(std::string path, int baud) : path_(std::move(path)) {
    const speed_t speed = baud_constant(baud);
    fd_ = ::open(path_.c_str(), O_RDWR | O_NOCTTY | O_NONBLOCK | O_CLOEXEC);
    if (fd_ < 0) throw DeviceOpenError("cannot open " + path_ + ": " + errno_text());

    termios tio{};
    if (::tcgetattr(fd_, &tio) != 0) {
        const std::string msg = "not a terminal: " + path_ + ": " + errno_text();
        ::close(fd_);
        throw DeviceOpenError(msg);
    }
    ::cfmakeraw(&tio);
    tio.c_cflag |= CLOCAL | CREAD;
    tio.c_cflag &= ~(CSTOPB | PARENB);
    tio.c_cc[VMIN] = 0;
    tio.c_cc[VTIME] = 0;
    ::cfsetispeed(&tio, speed);
    ::cfsetospeed(&tio, speed);
    if (::tcsetattr(fd_, TCSANOW, &tio) != 0) {
        const std::string msg = "cannot configure " + path_ + ": " + errno_text();
        ::close(fd_);
        throw DeviceOpenError(msg);
    }
    ::tcflush(fd_, TCIOFLUSH);
}

SerialLink::~SerialLink() {
    if (fd_ >= 0) ::close(fd_);
}

void SerialLink::write(std::string_view bytes) {
    while (!bytes.empty()) {
        const ssize_t n = ::write(fd_, bytes.data(), bytes.size());
        if (n > 0) {
            bytes.remove_prefix(static_cast<std::size_t>(n));
        } else if (n < 0 && errno != EAGAIN && errno != EINTR) {
            throw DeviceOpenError("write to " + path_ + " failed: " + errno_text());
        }
    }
}

std::string SerialLink::read_available() {
    std::string out;
    char buf[512];
    for (;;) {
        const ssize_t n = ::read(fd_, buf, sizeof buf);
        if (n > 0) {
            out.append(buf, static_cast<std::size_t>(n));
        } else if (n < 0 && errno == EINTR) {
            continue;
        } else {
            break;
        }
    }
    return out;
}

}  // namespace bendaid::bridge

#pragma once

// Helpers for driving the mcdist binary from tests.

#include <cstdio>
#include <filesystem>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <fcntl.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

namespace mcdist::testing
{
    struct RunOutput
    {
        int status;
        std::string out;

        /// Value of a `key=value` line, or "" if absent.
        auto value(const std::string & key) const -> std::string
        {
            std::istringstream in(out);
            for (std::string line ; std::getline(in, line) ; )
                if (line.starts_with(key + "="))
                    return line.substr(key.size() + 1);
            return "";
        }
    };

    inline auto exec_child(const std::vector<std::string> & args, const std::string & stdout_path) -> void
    {
        std::vector<char *> argv;
        for (auto & a : args)
            argv.push_back(const_cast<char *>(a.c_str()));
        argv.push_back(nullptr);

        int out = ::open(stdout_path.c_str(), O_WRONLY | O_CREAT | O_TRUNC, 0644);
        int null = ::open("/dev/null", O_WRONLY);
        if (out >= 0)
            ::dup2(out, STDOUT_FILENO);
        if (null >= 0)
            ::dup2(null, STDERR_FILENO);
        ::execv(argv[0], argv.data());
        ::_exit(127);
    }

    /// Starts args[0] with stdout redirected to a file; stderr discarded.
    inline auto start_process(const std::vector<std::string> & args, const std::string & stdout_path) -> pid_t
    {
        pid_t pid = ::fork();
        if (pid < 0)
            throw std::runtime_error("fork failed");
        if (pid == 0)
            exec_child(args, stdout_path);
        return pid;
    }

    inline auto wait_process(pid_t pid) -> int
    {
        int status = 0;
        while (::waitpid(pid, &status, 0) < 0)
            ;
        if (WIFEXITED(status))
            return WEXITSTATUS(status);
        return 128 + (WIFSIGNALED(status) ? WTERMSIG(status) : 0);
    }

    inline auto read_text(const std::filesystem::path & path) -> std::string
    {
        std::FILE * f = std::fopen(path.c_str(), "rb");
        if (! f)
            return "";
        std::string text;
        char buffer[4096];
        for (std::size_t n ; (n = std::fread(buffer, 1, sizeof(buffer), f)) > 0 ; )
            text.append(buffer, n);
        std::fclose(f);
        return text;
    }

    /// Runs args to completion and captures stdout.
    inline auto run_process(const std::vector<std::string> & args) -> RunOutput
    {
        char name[] = "/tmp/mcdist-out-XXXXXX";
        int fd = ::mkstemp(name);
        if (fd < 0)
            throw std::runtime_error("mkstemp failed");
        ::close(fd);
        auto pid = start_process(args, name);
        int status = wait_process(pid);
        RunOutput result{ status, read_text(name) };
        std::filesystem::remove(name);
        return result;
    }
}

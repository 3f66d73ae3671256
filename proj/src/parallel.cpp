#include "adaptnorm/parallel.hpp"

#include <cstdlib>
#include <string>

namespace adaptnorm {

int resolve_thread_count(int requested)
{
    if (requested > 0)
        return requested;
    if (char const* env = std::getenv("THREADS"))
    {
        try
        {
            int value = std::stoi(env);
            if (value > 0)
                return value;
        }
        catch (std::exception const&)
        {
        }
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

}  // namespace adaptnorm

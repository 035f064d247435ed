package corpus.api;

public interface Service {
    enum Status { UP, DOWN, UNKNOWN }

    Status status();

    interface Listener {
        void changed(Status from, Status to);
    }
}
